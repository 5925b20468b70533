//! Tutte–Whitney polynomials, the chromatic polynomial and relatives.

use std::collections::HashMap;

use num::BigInt;

use crate::canon;
use crate::config::Config;
use crate::error::Result;
use crate::exec::fold_range;
use crate::graph::{EdgeKind, Multigraph};
use crate::poly::{int, MultiPoly, Rational};

/// Which algorithm produced a Tutte polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TutteMethod {
    SubsetExpansion,
    DeletionContraction,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TutteResult {
    pub polynomial: MultiPoly,
    pub method: TutteMethod,
}

/// Edge choice for the deletion–contraction recursion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pivot {
    /// Peel loops, then coloops, then split on the first remaining edge.
    FirstOrdinary,
    /// Always the last edge in the list, whatever its kind.
    LastEdge,
    /// A pseudo-random edge, whatever its kind.
    Shuffled(u64),
}

#[derive(Debug, Clone, Copy)]
pub struct TutteOptions {
    pub pivot: Pivot,
    pub memoize: bool,
    pub memo_capacity: usize,
    pub canon_limit: usize,
}

impl Default for TutteOptions {
    fn default() -> Self {
        let c = Config::default();
        TutteOptions {
            pivot: Pivot::FirstOrdinary,
            memoize: true,
            memo_capacity: c.memo_capacity,
            canon_limit: c.canon_limit,
        }
    }
}

fn counts_to_poly(counts: &[u64], width: usize, vx: &str, vy: &str) -> MultiPoly {
    let terms = counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(idx, &c)| {
            let (a, b) = (idx / width, idx % width);
            (
                vec![a as u32, b as u32],
                Rational::from_integer(BigInt::from(c)),
            )
        });
    MultiPoly::from_terms(vec![vx.into(), vy.into()], terms).expect("well-formed terms")
}

/// R(G;x,y) = Σ_X x^{ρ(E)−ρ(X)} y^{|X|−ρ(X)}.
pub fn whitney_rank_poly(g: &Multigraph) -> Result<MultiPoly> {
    whitney_rank_poly_with(g, &Config::default())
}

pub fn whitney_rank_poly_with(g: &Multigraph, cfg: &Config) -> Result<MultiPoly> {
    cfg.check_subset_edges(g.m())?;
    let m = g.m();
    let full_rank = g.rank();
    let width = m + 1;
    let len = (full_rank + 1) * width;
    let counts = fold_range(
        cfg.exec,
        1u64 << m,
        || vec![0u64; len],
        |mut acc, x| {
            let r = g.subset_rank(x);
            let size = x.count_ones() as usize;
            acc[(full_rank - r) * width + (size - r)] += 1;
            acc
        },
        crate::exec::add_counts,
    );
    Ok(counts_to_poly(&counts, width, "x", "y"))
}

/// Tutte polynomial by subset expansion: R(G; x−1, y−1).
pub fn tutte_by_subsets(g: &Multigraph) -> Result<TutteResult> {
    let r = whitney_rank_poly(g)?;
    let shifted = r
        .substitute("x", &(MultiPoly::var("x") - MultiPoly::one()))
        .substitute("y", &(MultiPoly::var("y") - MultiPoly::one()));
    Ok(TutteResult {
        polynomial: shifted,
        method: TutteMethod::SubsetExpansion,
    })
}

/// Tutte polynomial by deletion–contraction with memoisation on canonical forms.
pub fn tutte_poly(g: &Multigraph) -> MultiPoly {
    tutte_poly_with(g, &TutteOptions::default())
}

pub fn tutte_poly_with(g: &Multigraph, opts: &TutteOptions) -> MultiPoly {
    let mut rec = Recursion {
        opts,
        memo: HashMap::new(),
        rng: match opts.pivot {
            Pivot::Shuffled(seed) => seed | 1,
            _ => 0,
        },
    };
    rec.tutte(g.clone())
}

struct Recursion<'a> {
    opts: &'a TutteOptions,
    memo: HashMap<Vec<u8>, MultiPoly>,
    rng: u64,
}

impl Recursion<'_> {
    fn next_random(&mut self) -> u64 {
        // xorshift64
        let mut x = self.rng;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.rng = x;
        x
    }

    fn tutte(&mut self, g: Multigraph) -> MultiPoly {
        if g.m() == 0 {
            return MultiPoly::one();
        }
        let key = if self.opts.memoize {
            canon::canonical_form(&g.strip_isolated(), self.opts.canon_limit).ok()
        } else {
            None
        };
        if let Some(k) = &key {
            if let Some(p) = self.memo.get(k) {
                return p.clone();
            }
        }
        let result = match self.opts.pivot {
            Pivot::FirstOrdinary => self.peel_then_split(&g),
            Pivot::LastEdge => self.split_on(&g, g.m() - 1),
            Pivot::Shuffled(_) => {
                let e = (self.next_random() % g.m() as u64) as usize;
                self.split_on(&g, e)
            }
        };
        if let Some(k) = key {
            if self.memo.len() < self.opts.memo_capacity {
                self.memo.insert(k, result.clone());
            }
        }
        result
    }

    fn peel_then_split(&mut self, g: &Multigraph) -> MultiPoly {
        let loops = g.edges().iter().filter(|(u, v)| u == v).count() as u32;
        let mut mask = 0u64;
        for (i, (u, v)) in g.edges().iter().enumerate() {
            if u == v {
                mask |= 1 << i;
            }
        }
        let without_loops = g.delete_edges(mask);
        let bridges = without_loops.coloops();
        let factor = MultiPoly::var("y")
            .pow(loops)
            .mul(&MultiPoly::var("x").pow(bridges.len() as u32));
        if loops > 0 || !bridges.is_empty() {
            let bmask = bridges.iter().fold(0u64, |m, &e| m | 1 << e);
            return factor.mul(&self.tutte(without_loops.delete_edges(bmask)));
        }
        self.split_on(g, 0)
    }

    fn split_on(&mut self, g: &Multigraph, e: usize) -> MultiPoly {
        let deleted = g.delete_edge(e).expect("valid edge");
        match g.classify_edge(e).expect("valid edge") {
            EdgeKind::Loop => MultiPoly::var("y").mul(&self.tutte(deleted)),
            EdgeKind::Coloop => MultiPoly::var("x").mul(&self.tutte(deleted)),
            EdgeKind::Ordinary => {
                let contracted = g.contract_edge(e).expect("valid edge");
                self.tutte(deleted).add(&self.tutte(contracted))
            }
        }
    }
}

/// P(G;q) = (−1)^{ρ(G)} q^{k(G)} T(G; 1−q, 0).
pub fn chromatic_poly(g: &Multigraph) -> MultiPoly {
    chromatic_from_tutte(g, &tutte_poly(g))
}

pub fn chromatic_from_tutte(g: &Multigraph, tutte: &MultiPoly) -> MultiPoly {
    let q = MultiPoly::var("q");
    let t = tutte
        .substitute("x", &(MultiPoly::one() - q.clone()))
        .substitute_value("y", &int(0));
    let sign = if g.rank().is_multiple_of(2) { 1 } else { -1 };
    t.mul(&q.pow(g.components() as u32)).scale(&int(sign))
}

/// P'(G;q) = P(L(G);q), the number of proper q-edge-colourings.
pub fn edge_chromatic_count_poly(g: &Multigraph) -> Result<MultiPoly> {
    Ok(chromatic_poly(&g.line_graph()?))
}

/// BP(G;x,y,z) = Σ_X x^{|X|} y^{k(X)} z^{ν(X)}.
pub fn bp_poly(g: &Multigraph) -> Result<MultiPoly> {
    bp_poly_with(g, &Config::default())
}

pub fn bp_poly_with(g: &Multigraph, cfg: &Config) -> Result<MultiPoly> {
    cfg.check_subset_edges(g.m())?;
    let (m, n) = (g.m(), g.n());
    let dim = (m + 1) * (n + 1) * (n + 1);
    let counts = fold_range(
        cfg.exec,
        1u64 << m,
        || vec![0u64; dim],
        |mut acc, x| {
            let s = g.subset_stats(x);
            acc[(s.size * (n + 1) + s.kcount) * (n + 1) + s.nu] += 1;
            acc
        },
        crate::exec::add_counts,
    );
    let terms = counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(idx, &c)| {
            let nu = idx % (n + 1);
            let k = idx / (n + 1) % (n + 1);
            let size = idx / ((n + 1) * (n + 1));
            (
                vec![size as u32, k as u32, nu as u32],
                Rational::from_integer(BigInt::from(c)),
            )
        });
    MultiPoly::from_terms(vec!["x".into(), "y".into(), "z".into()], terms)
}
