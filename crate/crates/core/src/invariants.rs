//! Invariants that are not polynomials in their parameter: homomorphisms
//! to cycles, 2-assignments with bounded chromons, and genus distributions.

use std::collections::BTreeMap;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::exec::{add_counts, fold_range};
use crate::graph::{Multigraph, UnionFind};
use crate::partition::decode;

/// Number of maps `V → Z_q` sending every edge to an edge of `C_q`.
/// With `surjective`, only maps hitting every vertex of `C_q` are counted.
pub fn hom_cycle_count(g: &Multigraph, q: u64, surjective: bool) -> Result<u64> {
    hom_cycle_count_with(g, q, surjective, &Config::default())
}

pub fn hom_cycle_count_with(g: &Multigraph, q: u64, surjective: bool, cfg: &Config) -> Result<u64> {
    if q < 3 {
        return Err(Error::InvalidArgument("C_q needs q ≥ 3".into()));
    }
    if g.has_loop() {
        return Ok(0);
    }
    let n = g.n();
    let total = cfg.enumeration_size("vertex maps", q, n)?;
    let edges = g.edges().to_vec();
    Ok(fold_range(
        cfg.exec,
        total,
        || 0u64,
        |acc, idx| {
            let f = decode(idx, q, n);
            let ok = edges.iter().all(|&(u, v)| {
                let d = (f[u] + q - f[v]) % q;
                d == 1 || d == q - 1
            });
            let onto = !surjective || {
                let mut hit = vec![false; q as usize];
                f.iter().for_each(|&c| hit[c as usize] = true);
                hit.iter().all(|&h| h)
            };
            acc + (ok && onto) as u64
        },
        |a, b| a + b,
    ))
}

/// Total 2-assignments whose every chromon has at most `s` vertices.
pub fn bounded_chromon_count(g: &Multigraph, s: usize) -> Result<u64> {
    bounded_chromon_count_with(g, s, &Config::default())
}

pub fn bounded_chromon_count_with(g: &Multigraph, s: usize, cfg: &Config) -> Result<u64> {
    let n = g.n();
    let total = cfg.enumeration_size("2-assignments", 2, n)?;
    Ok(fold_range(
        cfg.exec,
        total,
        || 0u64,
        |acc, x| {
            let mut uf = UnionFind::new(n);
            for &(u, v) in g.edges() {
                if (x >> u & 1) == (x >> v & 1) {
                    uf.union(u, v);
                }
            }
            let mut sizes = vec![0usize; n];
            for v in 0..n {
                sizes[uf.find(v)] += 1;
            }
            acc + sizes.iter().all(|&k| k <= s) as u64
        },
        |a, b| a + b,
    ))
}

/// Number of orientable 2-cell embeddings (rotation systems) of each genus.
///
/// Edge `i = (u, v)` has darts `2i` (leaving u) and `2i + 1` (leaving v).
/// A rotation system orders the darts leaving each vertex cyclically; faces
/// are the orbits of `d ↦ succ(d ^ 1)`, where `succ` is the rotation
/// successor at the tail of its argument. Genus is `(2 − n + m − F)/2`.
pub fn genus_distribution(g: &Multigraph) -> Result<BTreeMap<usize, u64>> {
    genus_distribution_with(g, &Config::default())
}

pub fn genus_distribution_with(g: &Multigraph, cfg: &Config) -> Result<BTreeMap<usize, u64>> {
    if g.has_loop() {
        return Err(Error::HasLoops);
    }
    if g.n() == 0 || !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let (n, m) = (g.n(), g.m());
    let mut darts_at: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        darts_at[u].push(2 * i);
        darts_at[v].push(2 * i + 1);
    }
    // (d − 1)! cyclic orders at a vertex of degree d
    let radices: Vec<u64> = darts_at
        .iter()
        .map(|d| (1..d.len().max(1) as u64).product())
        .collect();
    let total = radices.iter().try_fold(1u64, |acc, &r| {
        acc.checked_mul(r)
            .filter(|&t| t <= cfg.max_rotation_systems)
            .ok_or(Error::SizeLimit {
                what: "rotation systems",
                size: acc as u128 * r as u128,
                limit: cfg.max_rotation_systems as u128,
            })
    })?;
    let max_genus = (m + 1 - n.min(m + 1)) / 2 + 1;
    let counts = fold_range(
        cfg.exec,
        total,
        || vec![0u64; max_genus + 1],
        |mut acc, idx| {
            let succ = rotation(&darts_at, &radices, idx, 2 * m);
            let faces = count_faces(&succ);
            let genus = (2 + m - n - faces) / 2;
            acc[genus] += 1;
            acc
        },
        add_counts,
    );
    Ok(counts
        .into_iter()
        .enumerate()
        .filter(|(_, c)| *c > 0)
        .collect())
}

/// Decodes rotation system `idx` into a successor table over darts.
fn rotation(
    darts_at: &[Vec<usize>],
    radices: &[u64],
    mut idx: u64,
    num_darts: usize,
) -> Vec<usize> {
    let mut succ = vec![0; num_darts];
    for (darts, &radix) in darts_at.iter().zip(radices) {
        if darts.is_empty() {
            continue;
        }
        let mut code = idx % radix;
        idx /= radix;
        // the first dart is fixed; the rest follow in the permutation with Lehmer code `code`
        let mut rest: Vec<usize> = darts[1..].to_vec();
        let mut order = vec![darts[0]];
        while !rest.is_empty() {
            let k = rest.len() as u64;
            let fact: u64 = (1..k).product();
            let pick = (code / fact) as usize;
            code %= fact;
            order.push(rest.remove(pick));
        }
        for i in 0..order.len() {
            succ[order[i]] = order[(i + 1) % order.len()];
        }
    }
    succ
}

fn count_faces(succ: &[usize]) -> usize {
    if succ.is_empty() {
        return 1;
    }
    let mut seen = vec![false; succ.len()];
    let mut faces = 0;
    for start in 0..succ.len() {
        if seen[start] {
            continue;
        }
        faces += 1;
        let mut d = start;
        while !seen[d] {
            seen[d] = true;
            d = succ[d ^ 1];
        }
    }
    faces
}
