//! Potts, Ising and symmetric Ashkin–Teller partition functions in reduced
//! (exponentiated-coupling) variables.
//!
//! Each model sums over spin assignments and counts bichromatic edges;
//! every count is a monomial exponent so results are exact polynomials.

use std::fmt;

use num::BigInt;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::exec::{add_counts, fold_range};
use crate::graph::Multigraph;
use crate::poly::{MultiPoly, Rational};

/// `exp(Σ c_i K_i · |E|)`, kept symbolic because it is not rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prefactor {
    pub couplings: Vec<(String, i64)>,
    pub edges: usize,
}

impl fmt::Display for Prefactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner: Vec<String> = self
            .couplings
            .iter()
            .map(|(k, c)| {
                if *c == 1 {
                    k.clone()
                } else {
                    format!("{c}*{k}")
                }
            })
            .collect();
        write!(f, "exp(({})*{})", inner.join(" + "), self.edges)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionFunction {
    pub reduced: MultiPoly,
    pub prefactor: Prefactor,
}

/// Counts bichromatic edges of each assignment `f: V → [q]`, histogrammed by count.
fn bichromatic_histogram(g: &Multigraph, q: u64, cfg: &Config) -> Result<Vec<u64>> {
    let n = g.n();
    let total = cfg.enumeration_size("spin assignments", q, n)?;
    let edges: Vec<(usize, usize)> = g.edges().iter().copied().filter(|(u, v)| u != v).collect();
    let m = g.m();
    Ok(fold_range(
        cfg.exec,
        total,
        || vec![0u64; m + 1],
        |mut acc, idx| {
            let colours = decode(idx, q, n);
            let bad = edges
                .iter()
                .filter(|&&(u, v)| colours[u] != colours[v])
                .count();
            acc[bad] += 1;
            acc
        },
        add_counts,
    ))
}

pub(crate) fn decode(mut idx: u64, base: u64, n: usize) -> Vec<u64> {
    let mut out = vec![0; n];
    for slot in out.iter_mut() {
        *slot = idx % base;
        idx /= base;
    }
    out
}

fn histogram_poly(counts: &[u64], var: &str) -> MultiPoly {
    let terms = counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(k, &c)| (vec![k as u32], Rational::from_integer(BigInt::from(c))));
    MultiPoly::from_terms(vec![var.to_string()], terms).expect("well-formed terms")
}

/// Σ_{f:V→[q]} w^{|E^−(f)|}, where E^− are the bichromatic edges.
pub fn potts_reduced(g: &Multigraph, q: u64) -> Result<MultiPoly> {
    potts_reduced_with(g, q, &Config::default())
}

pub fn potts_reduced_with(g: &Multigraph, q: u64, cfg: &Config) -> Result<MultiPoly> {
    if q == 0 {
        return Err(Error::InvalidArgument("Potts model needs q ≥ 1".into()));
    }
    Ok(histogram_poly(&bichromatic_histogram(g, q, cfg)?, "w"))
}

/// Σ_σ s^{|E^−(σ)|}; the full function is `exp(K·|E|)` times this at s = e^{−2K}.
pub fn ising_reduced(g: &Multigraph) -> Result<MultiPoly> {
    ising_reduced_with(g, &Config::default())
}

pub fn ising_reduced_with(g: &Multigraph, cfg: &Config) -> Result<MultiPoly> {
    Ok(histogram_poly(&bichromatic_histogram(g, 2, cfg)?, "s"))
}

pub fn ising(g: &Multigraph) -> Result<PartitionFunction> {
    Ok(PartitionFunction {
        reduced: ising_reduced(g)?,
        prefactor: Prefactor {
            couplings: vec![("K".into(), 1)],
            edges: g.m(),
        },
    })
}

/// Σ_{σ,τ} a^{|E^−(σ)|+|E^−(τ)|} b^{|E^−(στ)|}.
pub fn symat_reduced(g: &Multigraph) -> Result<MultiPoly> {
    symat_reduced_with(g, &Config::default())
}

pub fn symat_reduced_with(g: &Multigraph, cfg: &Config) -> Result<MultiPoly> {
    let n = g.n();
    let total = cfg.enumeration_size("spin assignments", 4, n)?;
    let edges: Vec<(usize, usize)> = g.edges().iter().copied().filter(|(u, v)| u != v).collect();
    let m = g.m();
    let width = m + 1;
    let counts = fold_range(
        cfg.exec,
        total,
        || vec![0u64; (2 * m + 1) * width],
        |mut acc, idx| {
            // bit 2v of idx is σ_v, bit 2v+1 is τ_v
            let (mut a, mut b) = (0, 0);
            for &(u, v) in &edges {
                let su = idx >> (2 * u) & 3;
                let sv = idx >> (2 * v) & 3;
                let diff = su ^ sv;
                a += (diff & 1) as usize + (diff >> 1) as usize;
                // στ flips exactly when one of σ, τ flips
                b += (diff == 1 || diff == 2) as usize;
            }
            acc[a * width + b] += 1;
            acc
        },
        add_counts,
    );
    let terms = counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(idx, &c)| {
            (
                vec![(idx / width) as u32, (idx % width) as u32],
                Rational::from_integer(BigInt::from(c)),
            )
        });
    MultiPoly::from_terms(vec!["a".into(), "b".into()], terms)
}

pub fn symat(g: &Multigraph) -> Result<PartitionFunction> {
    Ok(PartitionFunction {
        reduced: symat_reduced(g)?,
        prefactor: Prefactor {
            couplings: vec![("K".into(), 2), ("K'".into(), 1)],
            edges: g.m(),
        },
    })
}
