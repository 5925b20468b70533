//! Test corpus and brute-force oracles shared by the integration tests.
//!
//! The oracles deliberately avoid the library's algorithms: ranks come from
//! a local union-find, colourings are enumerated directly and forcing is
//! explored over every possible order.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use graphpoly::poly::{int, MultiPoly, Rational};
use graphpoly::Multigraph;
use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CORPUS_SEED: u64 = 0x6a09_e667_f3bc_c908;

/// Every labelled simple graph on `n` vertices.
pub fn all_labelled_simple(n: usize) -> Vec<Multigraph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    (0u64..1 << pairs.len())
        .map(|mask| {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e);
            Multigraph::new(n, edges).unwrap()
        })
        .collect()
}

fn dedup_iso(graphs: impl IntoIterator<Item = Multigraph>) -> Vec<Multigraph> {
    let mut seen = HashSet::new();
    graphs
        .into_iter()
        .filter(|g| seen.insert(g.canonical_form().unwrap()))
        .collect()
}

/// Simple connected graphs with 1..=max_n vertices, one per isomorphism class.
pub fn simple_connected(max_n: usize) -> Vec<Multigraph> {
    dedup_iso(
        (1..=max_n)
            .flat_map(all_labelled_simple)
            .filter(|g| g.is_connected()),
    )
}

/// Simple graphs (connected or not) with 0..=max_n vertices, up to isomorphism.
pub fn simple_graphs(max_n: usize) -> Vec<Multigraph> {
    dedup_iso((0..=max_n).flat_map(all_labelled_simple))
}

/// Seeded multigraphs with loops and parallel edges, 1–5 vertices, at most 8 edges.
pub fn random_multigraphs(count: usize, seed: u64) -> Vec<Multigraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=5);
            let m = rng.gen_range(0..=8);
            let edges: Vec<(usize, usize)> = (0..m)
                .map(|_| {
                    let u = rng.gen_range(0..n);
                    // loops are rarer than ordinary edges
                    let v = if rng.gen_bool(0.15) {
                        u
                    } else {
                        rng.gen_range(0..n)
                    };
                    (u, v)
                })
                .collect();
            Multigraph::new(n, edges).unwrap()
        })
        .collect()
}

/// All simple connected graphs with n ≤ 5 plus 50 seeded random multigraphs.
pub fn corpus() -> Vec<Multigraph> {
    let mut out = simple_connected(5);
    out.extend(random_multigraphs(50, CORPUS_SEED));
    out
}

// ---- polynomial helpers ----

pub fn value(p: &MultiPoly, bindings: &[(&str, Rational)]) -> Rational {
    let mut q = p.clone();
    for (name, v) in bindings {
        q = q.substitute_value(name, v);
    }
    q.as_constant()
        .unwrap_or_else(|| panic!("unbound variables left in {q}"))
}

pub fn to_f64(r: &Rational) -> f64 {
    use num::ToPrimitive;
    r.to_f64().unwrap()
}

pub fn pow(r: &Rational, k: i64) -> Rational {
    if k >= 0 {
        num::pow::pow(r.clone(), k as usize)
    } else {
        Rational::one() / num::pow::pow(r.clone(), (-k) as usize)
    }
}

// ---- oracles ----

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        x = parent[x];
    }
    x
}

/// Rank of the edge subset `mask`, i.e. n minus the number of components of (V, X).
pub fn rank(g: &Multigraph, mask: u64) -> usize {
    let mut parent: Vec<usize> = (0..g.n()).collect();
    let mut r = 0;
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        if mask >> i & 1 == 1 {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                parent[a] = b;
                r += 1;
            }
        }
    }
    r
}

/// Whitney rank generating function straight from its definition.
pub fn whitney_oracle(g: &Multigraph) -> MultiPoly {
    let full = rank(g, (1u64 << g.m()) - 1);
    let mut acc: HashMap<Vec<u32>, i64> = HashMap::new();
    for mask in 0u64..1 << g.m() {
        let r = rank(g, mask);
        *acc.entry(vec![
            (full - r) as u32,
            (mask.count_ones() as usize - r) as u32,
        ])
        .or_default() += 1;
    }
    MultiPoly::from_terms(
        vec!["x".into(), "y".into()],
        acc.into_iter().map(|(e, c)| (e, int(c))),
    )
    .unwrap()
}

/// Maps `V → [q]` encoded little-endian in base `q`.
pub fn assignments(n: usize, q: u32) -> impl Iterator<Item = Vec<u32>> {
    let total = (q as u64).pow(n as u32);
    (0..total).map(move |mut idx| {
        (0..n)
            .map(|_| {
                let c = (idx % q as u64) as u32;
                idx /= q as u64;
                c
            })
            .collect()
    })
}

pub fn proper(g: &Multigraph, colours: &[u32]) -> bool {
    g.edges()
        .iter()
        .all(|&(u, v)| u != v && colours[u] != colours[v])
}

/// Number of proper q-colourings.
pub fn colour_count(g: &Multigraph, q: u32) -> u64 {
    if q == 0 {
        return (g.n() == 0) as u64;
    }
    assignments(g.n(), q).filter(|c| proper(g, c)).count() as u64
}

/// Σ_f t^{−(bichromatic edges)} over all f: V → [q].
pub fn potts_oracle(g: &Multigraph, q: u32, t: &Rational) -> Rational {
    assignments(g.n(), q)
        .map(|c| {
            let bad = g.edges().iter().filter(|&&(u, v)| c[u] != c[v]).count();
            pow(t, -(bad as i64))
        })
        .fold(Rational::zero(), |a, b| a + b)
}

/// Partial assignments use 0 for "uncoloured" and 1..=λ for colours.
pub fn extendable(g: &Multigraph, partial: &[u32], lambda: u32) -> bool {
    lambda > 0
        && assignments(g.n(), lambda).any(|total| {
            proper(g, &total)
                && partial
                    .iter()
                    .zip(&total)
                    .all(|(&p, &t)| p == 0 || p == t + 1)
        })
}

fn immediately_forced(g: &Multigraph, colours: &[u32], lambda: u32) -> Vec<(usize, u32)> {
    let n = g.n();
    let mut out = Vec::new();
    for v in (0..n).filter(|&v| colours[v] == 0) {
        let mut seen = vec![false; lambda as usize + 1];
        for &(a, b) in g.edges() {
            let other = if a == v {
                b
            } else if b == v {
                a
            } else {
                continue;
            };
            if colours[other] != 0 {
                seen[colours[other] as usize] = true;
            }
        }
        let missing: Vec<u32> = (1..=lambda).filter(|&c| !seen[c as usize]).collect();
        if lambda > 0 && missing.len() == 1 {
            out.push((v, missing[0]));
        }
    }
    out
}

/// Every state where no vertex is immediately forced, reachable by some forcing order.
pub fn forcing_terminals(g: &Multigraph, start: &[u32], lambda: u32) -> HashSet<Vec<u32>> {
    let mut terminals = HashSet::new();
    let mut visited = HashSet::new();
    let mut stack = vec![start.to_vec()];
    while let Some(state) = stack.pop() {
        if !visited.insert(state.clone()) {
            continue;
        }
        let moves = immediately_forced(g, &state, lambda);
        if moves.is_empty() {
            terminals.insert(state);
            continue;
        }
        for (v, c) in moves {
            let mut next = state.clone();
            next[v] = c;
            stack.push(next);
        }
    }
    terminals
}

pub fn is_total_colouring(g: &Multigraph, colours: &[u32]) -> bool {
    colours.iter().all(|&c| c != 0) && proper(g, colours)
}

/// Genus distribution from every per-vertex *linear* order of darts; each
/// cyclic rotation is hit `Π deg(v)` times, which is divided out at the end.
pub fn genus_oracle(g: &Multigraph) -> std::collections::BTreeMap<usize, u64> {
    fn perms(items: &[usize]) -> Vec<Vec<usize>> {
        if items.len() <= 1 {
            return vec![items.to_vec()];
        }
        let mut out = Vec::new();
        for i in 0..items.len() {
            let mut rest = items.to_vec();
            let head = rest.remove(i);
            for mut p in perms(&rest) {
                p.insert(0, head);
                out.push(p);
            }
        }
        out
    }
    let n = g.n();
    let m = g.m();
    // dart 2i leaves edges[i].0, dart 2i+1 leaves edges[i].1
    let mut at: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        at[u].push(2 * i);
        at[v].push(2 * i + 1);
    }
    let options: Vec<Vec<Vec<usize>>> = at.iter().map(|d| perms(d)).collect();
    let mut counts: std::collections::BTreeMap<usize, u64> = Default::default();
    let mut choice = vec![0usize; n];
    loop {
        let mut next = vec![0usize; 2 * m];
        for v in 0..n {
            let order = &options[v][choice[v]];
            for (k, &d) in order.iter().enumerate() {
                next[d] = order[(k + 1) % order.len()];
            }
        }
        let mut seen = vec![false; 2 * m];
        let mut faces = 0;
        for s in 0..2 * m {
            if seen[s] {
                continue;
            }
            faces += 1;
            let mut d = s;
            while !seen[d] {
                seen[d] = true;
                d = next[d ^ 1];
            }
        }
        // V − E + F = 2 − 2γ
        let genus = (2 + m - n - faces) / 2;
        *counts.entry(genus).or_default() += 1;
        let mut i = 0;
        loop {
            if i == n {
                let repeats: u64 = at.iter().map(|d| d.len().max(1) as u64).product();
                return counts.into_iter().map(|(k, c)| (k, c / repeats)).collect();
            }
            choice[i] += 1;
            if choice[i] < options[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}
