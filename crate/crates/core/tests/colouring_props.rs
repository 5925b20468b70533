mod common;

use common::*;
use graphpoly::colouring::{
    ec_labelled, ec_labelled_conditional, ec_poly_fixed, eval_p, fc_labelled,
    fc_labelled_conditional, fc_poly_fixed, forces_colouring, is_extendable, pc_labelled, pc_poly,
    pc_poly_fixed, PartialAssignment,
};
use graphpoly::go::{go_count, go_count_poly, go_prob_poly, is_legal};
use graphpoly::invariants::{bounded_chromon_count, genus_distribution, hom_cycle_count};
use graphpoly::poly::{int, rat, MultiPoly, Rational};
use graphpoly::tutte::chromatic_poly;
use graphpoly::{LabelledGraph, Multigraph};
use num::{One, Signed, Zero};
use proptest::prelude::*;

fn arb_multigraph(max_n: usize, max_m: usize) -> impl Strategy<Value = Multigraph> {
    (1usize..=max_n).prop_flat_map(move |n| {
        prop::collection::vec((0..n, 0..n), 0..=max_m)
            .prop_map(move |edges| Multigraph::new(n, edges).unwrap())
    })
}

fn arb_loopless(max_n: usize, max_m: usize) -> impl Strategy<Value = Multigraph> {
    arb_multigraph(max_n, max_m).prop_map(|g| {
        Multigraph::new(g.n(), g.edges().iter().copied().filter(|(u, v)| u != v)).unwrap()
    })
}

/// A graph with a random (C, U) labelling and one unlabelled vertex to split on.
fn arb_labelled_split() -> impl Strategy<Value = (LabelledGraph, usize)> {
    arb_multigraph(5, 7).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), prop::collection::vec(0u8..3, n), 0..n).prop_filter_map(
            "split vertex must be unlabelled",
            |(g, tags, v)| {
                let mut tags = tags;
                tags[v] = 0;
                let c = (0..tags.len())
                    .filter(|&i| tags[i] == 1)
                    .fold(0u64, |m, i| m | 1 << i);
                let u = (0..tags.len())
                    .filter(|&i| tags[i] == 2)
                    .fold(0u64, |m, i| m | 1 << i);
                Some((LabelledGraph::new(g, c, u).ok()?, v))
            },
        )
    })
}

fn partial(lambda: u32, raw: &[u32]) -> PartialAssignment {
    PartialAssignment::new(lambda, raw.iter().map(|&c| (c != 0).then_some(c)).collect()).unwrap()
}

/// Every chromon has a vertex adjacent to an uncoloured vertex, by flood fill.
fn legal_oracle(g: &Multigraph, colours: &[u32]) -> bool {
    let n = g.n();
    let mut seen = vec![false; n];
    for start in (0..n).filter(|&v| colours[v] != 0) {
        if seen[start] {
            continue;
        }
        let mut stack = vec![start];
        seen[start] = true;
        let mut free = false;
        while let Some(v) = stack.pop() {
            for &(a, b) in g.edges() {
                let w = if a == v {
                    b
                } else if b == v {
                    a
                } else {
                    continue;
                };
                if colours[w] == 0 {
                    free = true;
                } else if colours[w] == colours[start] && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        if !free {
            return false;
        }
    }
    true
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn labelled_splits_hold((l, v) in arb_labelled_split()) {
        let lc = l.with_coloured(v).unwrap();
        let lu = l.with_uncoloured(v).unwrap();
        prop_assert_eq!(pc_labelled(&l).unwrap(), pc_labelled(&lc).unwrap() + pc_labelled(&lu).unwrap());
        for lambda in 1..=3u32 {
            let lp = MultiPoly::var("p").scale(&int(lambda as i64));
            let rest = MultiPoly::one() - lp.clone();
            let ec = ec_labelled_conditional(&l, lambda).unwrap();
            let ec_split = lp.mul(&ec_labelled_conditional(&lc, lambda).unwrap())
                + rest.mul(&ec_labelled_conditional(&lu, lambda).unwrap());
            prop_assert_eq!(ec, ec_split);
            let fc = fc_labelled_conditional(&l, lambda).unwrap();
            let fc_split = lp.mul(&fc_labelled_conditional(&lc, lambda).unwrap())
                + rest.mul(&fc_labelled_conditional(&lu, lambda).unwrap());
            prop_assert_eq!(fc, fc_split);
            prop_assert_eq!(
                ec_labelled(&l, lambda).unwrap(),
                ec_labelled(&lc, lambda).unwrap() + ec_labelled(&lu, lambda).unwrap()
            );
            prop_assert_eq!(
                fc_labelled(&l, lambda).unwrap(),
                fc_labelled(&lc, lambda).unwrap() + fc_labelled(&lu, lambda).unwrap()
            );
        }
    }

    #[test]
    fn extendability_matches_brute_force(g in arb_multigraph(5, 7), lambda in 1u32..=3, seed in any::<u64>()) {
        let n = g.n();
        let raw: Vec<u32> = (0..n).map(|i| ((seed >> (3 * i)) % (lambda as u64 + 1)) as u32).collect();
        prop_assert_eq!(is_extendable(&g, &partial(lambda, &raw)), extendable(&g, &raw, lambda));
    }

    #[test]
    fn polynomials_match_direct_sums(g in arb_multigraph(4, 6), lambda in 1u32..=3) {
        // Σ over partial assignments of p^{|dom|} (1 − λp)^{n − |dom|}, one per property
        let n = g.n();
        let p = MultiPoly::var("p");
        let rest = MultiPoly::one() - p.scale(&int(lambda as i64));
        let (mut ec, mut fc, mut pc) = (MultiPoly::zero(), MultiPoly::zero(), MultiPoly::zero());
        for raw in assignments(n, lambda + 1) {
            let k = raw.iter().filter(|&&c| c != 0).count() as u32;
            let w = p.pow(k).mul(&rest.pow(n as u32 - k));
            let coloured_ok = g.edges().iter().all(|&(a, b)| raw[a] == 0 || raw[b] == 0 || (a != b && raw[a] != raw[b]));
            if coloured_ok {
                pc = pc + w.clone();
            }
            if extendable(&g, &raw, lambda) {
                ec = ec + w.clone();
            }
            if forcing_terminals(&g, &raw, lambda).iter().any(|t| is_total_colouring(&g, t)) {
                fc = fc + w;
            }
        }
        prop_assert_eq!(pc_poly_fixed(&g, lambda).unwrap(), pc);
        prop_assert_eq!(ec_poly_fixed(&g, lambda).unwrap(), ec);
        prop_assert_eq!(fc_poly_fixed(&g, lambda).unwrap(), fc);
    }

    #[test]
    fn colouring_functions_are_multiplicative(g in arb_multigraph(3, 4), h in arb_multigraph(3, 4)) {
        let gh = g.disjoint_union(&h);
        prop_assert_eq!(pc_poly(&gh).unwrap(), pc_poly(&g).unwrap().mul(&pc_poly(&h).unwrap()));
        for lambda in [2u32, 3] {
            prop_assert_eq!(ec_poly_fixed(&gh, lambda).unwrap(), ec_poly_fixed(&g, lambda).unwrap().mul(&ec_poly_fixed(&h, lambda).unwrap()));
            prop_assert_eq!(fc_poly_fixed(&gh, lambda).unwrap(), fc_poly_fixed(&g, lambda).unwrap().mul(&fc_poly_fixed(&h, lambda).unwrap()));
        }
        prop_assert_eq!(go_count_poly(&gh).unwrap(), go_count_poly(&g).unwrap().mul(&go_count_poly(&h).unwrap()));
    }

    #[test]
    fn sandwich_on_the_model_range(g in arb_multigraph(4, 6), lambda in 2u32..=3, k in 0i64..=12) {
        let p = rat(k, 12 * lambda as i64);
        let fc = eval_p(&fc_poly_fixed(&g, lambda).unwrap(), &p);
        let ec = eval_p(&ec_poly_fixed(&g, lambda).unwrap(), &p);
        let pc = eval_p(&pc_poly_fixed(&g, lambda).unwrap(), &p);
        prop_assert!(Rational::zero() <= fc && fc <= ec && ec <= pc && pc <= Rational::one());
    }

    #[test]
    fn forcing_success_matches_exhaustive_search(g in arb_multigraph(5, 7), lambda in 1u32..=3, seed in any::<u64>()) {
        let n = g.n();
        let raw: Vec<u32> = (0..n).map(|i| ((seed >> (3 * i)) % (lambda as u64 + 1)) as u32).collect();
        let any_win = forcing_terminals(&g, &raw, lambda).iter().any(|t| is_total_colouring(&g, t));
        prop_assert_eq!(forces_colouring(&g, &partial(lambda, &raw)), any_win);
    }

    #[test]
    fn go_legality_matches_flood_fill(g in arb_multigraph(5, 7), lambda in 1u32..=3, seed in any::<u64>()) {
        let n = g.n();
        let raw: Vec<u32> = (0..n).map(|i| ((seed >> (3 * i)) % (lambda as u64 + 1)) as u32).collect();
        prop_assert_eq!(is_legal(&g, &partial(lambda, &raw)), legal_oracle(&g, &raw));
    }

    #[test]
    fn go_polynomials_agree(g in arb_multigraph(5, 7)) {
        let count = go_count_poly(&g).unwrap();
        for (_, c) in count.terms() {
            prop_assert!(c.is_integer() && !c.is_negative(), "coefficient {} in {}", c, count);
        }
        for lambda in 1..=3u32 {
            let brute = assignments(g.n(), lambda + 1).filter(|raw| legal_oracle(&g, raw)).count() as i64;
            prop_assert_eq!(go_count(&g, lambda).unwrap() as i64, brute);
            prop_assert_eq!(value(&count, &[("l", int(lambda as i64))]), int(brute));
            let base = int(lambda as i64 + 1);
            let prob = eval_p(&go_prob_poly(&g, lambda).unwrap(), &(Rational::one() / &base));
            prop_assert_eq!(prob * pow(&base, g.n() as i64), int(brute));
        }
    }

    #[test]
    fn genus_distribution_counts_rotations(g in arb_loopless(5, 7)) {
        prop_assume!(g.is_connected());
        let dist = genus_distribution(&g).unwrap();
        let total: u64 = (0..g.n()).map(|v| (1..g.degree(v).max(1) as u64).product::<u64>()).product();
        prop_assert_eq!(dist.values().sum::<u64>(), total);
        let euler_bound = (g.m() + 1 - g.n()) / 2;
        prop_assert!(dist.keys().all(|&k| k <= euler_bound));
        if total <= 5000 {
            prop_assert_eq!(dist, genus_oracle(&g));
        }
    }

    #[test]
    fn bounded_chromons_grow_to_all_assignments(g in arb_multigraph(6, 9)) {
        let n = g.n();
        let counts: Vec<u64> = (0..=n + 1).map(|s| bounded_chromon_count(&g, s).unwrap()).collect();
        prop_assert!(counts.windows(2).all(|w| w[0] <= w[1]));
        prop_assert_eq!(counts[n], 1u64 << n);
    }

    #[test]
    fn cycle_homomorphisms_match_enumeration(g in arb_loopless(5, 6), q in 3u64..=6) {
        let brute = assignments(g.n(), q as u32)
            .filter(|f| g.edges().iter().all(|&(u, v)| {
                let d = (f[u] as u64 + q - f[v] as u64) % q;
                d == 1 || d == q - 1
            }))
            .count() as u64;
        prop_assert_eq!(hom_cycle_count(&g, q, false).unwrap(), brute);
        if q % 2 == 0 && !g.is_bipartite() {
            prop_assert_eq!(brute, 0);
        }
        prop_assert!(hom_cycle_count(&g, q, true).unwrap() <= brute);
    }
}

#[test]
fn common_point_is_the_chromatic_polynomial() {
    for g in simple_connected(4) {
        for lambda in 2..=3u32 {
            let l = int(lambda as i64);
            let p = Rational::one() / &l;
            let want = value(&chromatic_poly(&g), &[("q", l.clone())]) * pow(&l, -(g.n() as i64));
            assert_eq!(eval_p(&pc_poly_fixed(&g, lambda).unwrap(), &p), want);
            assert_eq!(eval_p(&ec_poly_fixed(&g, lambda).unwrap(), &p), want);
            assert_eq!(eval_p(&fc_poly_fixed(&g, lambda).unwrap(), &p), want);
        }
    }
}
