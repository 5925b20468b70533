mod common;

use common::*;
use graphpoly::graph::families::*;
use graphpoly::io::{format_edge_list, parse_edge_list, parse_graph6};
use graphpoly::poly::{int, MultiPoly};
use graphpoly::tutte::{
    chromatic_poly, edge_chromatic_count_poly, tutte_by_subsets, tutte_poly, tutte_poly_with,
    whitney_rank_poly, Pivot, TutteOptions,
};
use graphpoly::Multigraph;
use proptest::prelude::*;

/// Multigraphs with loops and parallel edges, up to 6 vertices and `max_m` edges.
fn arb_multigraph(max_m: usize) -> impl Strategy<Value = Multigraph> {
    (1usize..=6).prop_flat_map(move |n| {
        prop::collection::vec((0..n, 0..n), 0..=max_m)
            .prop_map(move |edges| Multigraph::new(n, edges).unwrap())
    })
}

fn arb_simple(max_n: usize) -> impl Strategy<Value = Multigraph> {
    (1usize..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        prop::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let all = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            Multigraph::new(n, all.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn subset_statistics_agree(g in arb_multigraph(8)) {
        for x in 0..=g.full_mask() {
            let s = g.subset_stats(x);
            prop_assert_eq!(s.kcount, s.kappa + g.n() - s.nu);
            prop_assert_eq!(s.rank, g.n() - s.kcount);
            prop_assert_eq!(s.rank, rank(&g, x));
            prop_assert_eq!(s.rank, g.subset_rank(x));
        }
    }

    #[test]
    fn dual_rank_is_an_involution(g in arb_multigraph(7)) {
        let full = g.full_mask();
        let rho: Vec<usize> = (0..=full).map(|x| g.subset_rank(x)).collect();
        let dual = |r: &[usize]| -> Vec<usize> {
            (0..=full).map(|x| x.count_ones() as usize + r[(full & !x) as usize] - r[full as usize]).collect()
        };
        let star = dual(&rho);
        for x in 0..=full {
            prop_assert_eq!(star[x as usize], g.subset_stats(x).dualrank);
        }
        prop_assert_eq!(dual(&star), rho);
    }

    #[test]
    fn minors_commute(g in arb_multigraph(7), a in 0usize..7, b in 0usize..7) {
        prop_assume!(g.m() >= 2);
        let (e, f) = (a % g.m(), b % g.m());
        prop_assume!(e != f);
        // after removing e, edge f shifts down if it came later
        let f_after_e = if f > e { f - 1 } else { f };
        let e_after_f = if e > f { e - 1 } else { e };
        let del_ef = g.delete_edge(e).unwrap().delete_edge(f_after_e).unwrap();
        let del_fe = g.delete_edge(f).unwrap().delete_edge(e_after_f).unwrap();
        prop_assert_eq!(del_ef.canonical_form().unwrap(), del_fe.canonical_form().unwrap());
        let con_ef = g.contract_edge(e).unwrap().contract_edge(f_after_e).unwrap();
        let con_fe = g.contract_edge(f).unwrap().contract_edge(e_after_f).unwrap();
        prop_assert_eq!(con_ef.canonical_form().unwrap(), con_fe.canonical_form().unwrap());
    }

    #[test]
    fn blocks_partition_the_edges(g in arb_multigraph(9)) {
        let blocks = g.blocks();
        prop_assert_eq!(blocks.iter().map(|b| b.m()).sum::<usize>(), g.m());
        for b in &blocks {
            prop_assert!(b.m() >= 1);
            prop_assert!(b.is_connected());
            // a block has no cut vertex unless it is a single edge or loop
            if b.n() > 2 {
                for v in 0..b.n() {
                    prop_assert!(b.remove_vertices(1 << v).is_connected());
                }
            }
        }
    }

    #[test]
    fn tutte_matches_whitney_oracle(g in arb_multigraph(9)) {
        let shifted = whitney_oracle(&g)
            .substitute("x", &(MultiPoly::var("x") - MultiPoly::one()))
            .substitute("y", &(MultiPoly::var("y") - MultiPoly::one()));
        prop_assert_eq!(&tutte_poly(&g), &shifted);
        prop_assert_eq!(&tutte_by_subsets(&g).unwrap().polynomial, &shifted);
        prop_assert_eq!(whitney_rank_poly(&g).unwrap(), whitney_oracle(&g));
    }

    #[test]
    fn tutte_ignores_pivot_order_and_memo(g in arb_multigraph(9), seed in any::<u64>()) {
        let base = tutte_poly(&g);
        for pivot in [Pivot::LastEdge, Pivot::Shuffled(seed)] {
            for memoize in [false, true] {
                let opts = TutteOptions { pivot, memoize, ..TutteOptions::default() };
                prop_assert_eq!(&tutte_poly_with(&g, &opts), &base);
            }
        }
    }

    #[test]
    fn tutte_ignores_edge_list_order(g in arb_multigraph(8), seed in any::<u64>()) {
        let mut edges = g.edges().to_vec();
        let k = edges.len().max(1);
        edges.rotate_left(seed as usize % k);
        edges.reverse();
        let h = Multigraph::new(g.n(), edges).unwrap();
        prop_assert_eq!(tutte_poly(&g), tutte_poly(&h));
    }

    #[test]
    fn tutte_is_multiplicative(g in arb_multigraph(5), h in arb_multigraph(5)) {
        prop_assert_eq!(tutte_poly(&g.disjoint_union(&h)), tutte_poly(&g).mul(&tutte_poly(&h)));
        let product = g.blocks().iter().chain(h.blocks().iter()).fold(MultiPoly::one(), |acc, b| acc.mul(&tutte_poly(b)));
        prop_assert_eq!(tutte_poly(&g.disjoint_union(&h)), product);
    }

    #[test]
    fn chromatic_counts_colourings(g in arb_multigraph(8)) {
        let chi = chromatic_poly(&g);
        for q in 1..=3u32 {
            prop_assert_eq!(value(&chi, &[("q", int(q as i64))]), int(colour_count(&g, q) as i64));
        }
    }

    #[test]
    fn permuting_vertices_preserves_canonical_form(g in arb_multigraph(8), seed in any::<u64>()) {
        let n = g.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let h = g.permute(&perm);
        prop_assert_eq!(g.canonical_form().unwrap(), h.canonical_form().unwrap());
        prop_assert!(g.is_isomorphic(&h).unwrap());
    }

    #[test]
    fn edge_list_text_round_trips(g in arb_multigraph(8)) {
        let back = parse_edge_list(&format_edge_list(&g)).unwrap();
        prop_assert_eq!(back.n(), g.n());
        prop_assert_eq!(back.sorted_edges(), g.sorted_edges());
    }

    #[test]
    fn isomorphic_graphs_share_tutte(a in arb_simple(5), b in arb_simple(5)) {
        if a.is_isomorphic(&b).unwrap() {
            prop_assert_eq!(tutte_poly(&a), tutte_poly(&b));
        }
    }
}

#[test]
fn chromatic_matches_brute_force_on_all_small_graphs() {
    for g in simple_graphs(6).iter().filter(|g| g.m() <= 10) {
        let chi = chromatic_poly(g);
        for q in 1..=3u32 {
            assert_eq!(
                value(&chi, &[("q", int(q as i64))]),
                int(colour_count(g, q) as i64),
                "{g}"
            );
        }
    }
}

#[test]
fn edge_chromatic_counts_proper_edge_colourings() {
    for g in simple_connected(4) {
        let p = edge_chromatic_count_poly(&g).unwrap();
        let edges = g.edges();
        let touch = |a: usize, b: usize| {
            let (x, y) = (edges[a], edges[b]);
            x.0 == y.0 || x.0 == y.1 || x.1 == y.0 || x.1 == y.1
        };
        for q in 1..=3u32 {
            let brute = assignments(g.m(), q)
                .filter(|c| {
                    (0..g.m()).all(|a| (a + 1..g.m()).all(|b| !touch(a, b) || c[a] != c[b]))
                })
                .count();
            assert_eq!(value(&p, &[("q", int(q as i64))]), int(brute as i64), "{g}");
        }
    }
    // K_{1,3}: three edges pairwise touching
    let p = edge_chromatic_count_poly(&complete_bipartite(1, 3)).unwrap();
    assert_eq!(value(&p, &[("q", int(3))]), int(6));
}

#[test]
fn graph6_matches_edge_list() {
    let k4 = parse_graph6("C~").unwrap();
    assert!(k4.is_isomorphic(&complete(4)).unwrap());
    let empty = parse_graph6("C?").unwrap();
    assert_eq!((empty.n(), empty.m()), (4, 0));
}
