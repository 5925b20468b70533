//! Binary functions `f: 2^E → ℚ`, λ-reductions, the λ-rank and the
//! λ-Tutte–Whitney function.
//!
//! Tables and reductions are exact. Q^(λ) is the log of a ratio of exact
//! sums, so it and everything built from it is `f64`.

use num::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::graph::Multigraph;
use crate::poly::{format_rational, parse_rational, Rational};

/// Exponent of `(1 + λ*)` in the numerator of Q^(λ).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Normaliser {
    /// `|X|` — makes Q^(1) the rank, Q^(0) the dual rank, and the λ deletion–contraction relation hold.
    #[default]
    SubsetSize,
    /// The stored `vertex_count`, read literally.
    VertexCount,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryFunction {
    ground_size: usize,
    values: Vec<Rational>,
    pub vertex_count: usize,
}

#[derive(Serialize, Deserialize)]
struct BinaryJson {
    m: usize,
    vertex_count: usize,
    values: Vec<String>,
}

impl BinaryFunction {
    pub fn new(ground_size: usize, values: Vec<Rational>, vertex_count: usize) -> Result<Self> {
        if ground_size >= 32 || values.len() != 1usize << ground_size {
            return Err(Error::InvalidArgument(format!(
                "a binary function on {ground_size} elements needs 2^{ground_size} values, got {}",
                values.len()
            )));
        }
        Ok(BinaryFunction {
            ground_size,
            values,
            vertex_count,
        })
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, x: u64) -> &Rational {
        &self.values[x as usize]
    }

    pub fn full_mask(&self) -> u64 {
        (1u64 << self.ground_size) - 1
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&BinaryJson {
            m: self.ground_size,
            vertex_count: self.vertex_count,
            values: self.values.iter().map(format_rational).collect(),
        })
        .expect("serialisable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: BinaryJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let values = j
            .values
            .iter()
            .map(|v| parse_rational(v))
            .collect::<Result<Vec<_>>>()?;
        BinaryFunction::new(j.m, values, j.vertex_count)
    }
}

/// Indicator of the cocircuit space (GF(2) row space of the incidence matrix).
pub fn graphic(g: &Multigraph) -> Result<BinaryFunction> {
    graphic_with(g, &Config::default())
}

pub fn graphic_with(g: &Multigraph, cfg: &Config) -> Result<BinaryFunction> {
    cfg.check_subset_edges(g.m())?;
    let mut rows = vec![0u64; g.n()];
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        if u != v {
            rows[u] ^= 1 << i;
            rows[v] ^= 1 << i;
        }
    }
    // Reduce to a basis with distinct leading bits.
    let mut basis: Vec<u64> = Vec::new();
    for mut r in rows {
        for &b in &basis {
            r = r.min(r ^ b);
        }
        if r != 0 {
            basis.push(r);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    let mut values = vec![Rational::zero(); 1 << g.m()];
    for combo in 0u64..1 << basis.len() {
        let x = basis
            .iter()
            .enumerate()
            .filter(|(i, _)| combo >> i & 1 == 1)
            .fold(0u64, |acc, (_, b)| acc ^ b);
        values[x as usize] = Rational::one();
    }
    BinaryFunction::new(g.m(), values, g.n())
}

fn unsqueeze(x: u64, e: usize) -> u64 {
    let low = x & ((1 << e) - 1);
    let high = x >> e;
    low | high << (e + 1)
}

/// `(f⟨λ⟩e)(X) = (f(X) + λ f(X∪e)) / (f(∅) + λ f({e}))` on ground set `E∖e`.
pub fn lambda_reduce(f: &BinaryFunction, e: usize, lambda: &Rational) -> Result<BinaryFunction> {
    if e >= f.ground_size {
        return Err(Error::InvalidEdge {
            index: e,
            edges: f.ground_size,
        });
    }
    let denom = f.value(0) + lambda * f.value(1 << e);
    if denom.is_zero() {
        return Err(Error::ReductionUndefined);
    }
    let values = (0..1u64 << (f.ground_size - 1))
        .map(|x| {
            let full = unsqueeze(x, e);
            (f.value(full) + lambda * f.value(full | 1 << e)) / &denom
        })
        .collect();
    BinaryFunction::new(f.ground_size - 1, values, f.vertex_count)
}

/// λ* = (1 − λ)/(1 + λ).
pub fn dual_lambda(lambda: &Rational) -> Result<Rational> {
    let one = Rational::one();
    let d = &one + lambda;
    if d.is_zero() {
        return Err(Error::InvalidArgument("λ = −1 has no dual".into()));
    }
    Ok((one - lambda) / d)
}

fn powers(base: &Rational, k: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(k + 1);
    out.push(Rational::one());
    for i in 0..k {
        let next = &out[i] * base;
        out.push(next);
    }
    out
}

/// Precomputed data for evaluating Q^(λ)f at many subsets.
pub struct QRank<'a> {
    f: &'a BinaryFunction,
    support: Vec<u64>,
    lam_pow: Vec<Rational>,
    dual_pow: Vec<Rational>,
    one_plus_dual: Rational,
    normaliser: Normaliser,
    numerator: Rational,
}

impl<'a> QRank<'a> {
    pub fn new(f: &'a BinaryFunction, lambda: &Rational, normaliser: Normaliser) -> Result<Self> {
        let dual = dual_lambda(lambda)?;
        let m = f.ground_size;
        let support: Vec<u64> = (0..1u64 << m).filter(|&w| !f.value(w).is_zero()).collect();
        let lam_pow = powers(lambda, m);
        let numerator = support
            .iter()
            .map(|&w| &lam_pow[w.count_ones() as usize] * f.value(w))
            .fold(Rational::zero(), |a, b| a + b);
        Ok(QRank {
            f,
            support,
            lam_pow,
            dual_pow: powers(&dual, m),
            one_plus_dual: Rational::one() + dual,
            normaliser,
            numerator,
        })
    }

    pub fn at(&self, x: u64) -> Result<f64> {
        let denom = self
            .support
            .iter()
            .map(|&w| {
                let inside = (w & x).count_ones() as usize;
                let outside = (w & !x).count_ones() as usize;
                &self.lam_pow[outside] * &self.dual_pow[inside] * self.f.value(w)
            })
            .fold(Rational::zero(), |a, b| a + b);
        let exponent = match self.normaliser {
            Normaliser::SubsetSize => x.count_ones() as i32,
            Normaliser::VertexCount => self.f.vertex_count as i32,
        };
        let num = &self.numerator * num::pow::pow(self.one_plus_dual.clone(), exponent as usize);
        if !num.is_positive() || !denom.is_positive() {
            return Err(Error::QUndefined);
        }
        Ok(log2_rational(&num) - log2_rational(&denom))
    }
}

fn log2_rational(r: &Rational) -> f64 {
    fn log2_int(i: &num::BigInt) -> f64 {
        let bits = i.bits();
        if bits <= 1000 {
            i.to_f64().unwrap().log2()
        } else {
            let shift = bits - 64;
            (i >> shift).to_f64().unwrap().log2() + shift as f64
        }
    }
    log2_int(r.numer()) - log2_int(r.denom())
}

pub fn q_rank(f: &BinaryFunction, x: u64, lambda: &Rational) -> Result<f64> {
    QRank::new(f, lambda, Normaliser::default())?.at(x)
}

pub fn q_rank_with(
    f: &BinaryFunction,
    x: u64,
    lambda: &Rational,
    normaliser: Normaliser,
) -> Result<f64> {
    QRank::new(f, lambda, normaliser)?.at(x)
}

/// Q^(λ*)f(E) − Q^(λ*)f(E∖e).
pub fn loopiness(f: &BinaryFunction, e: usize, lambda: &Rational) -> Result<f64> {
    loopiness_with(f, e, lambda, Normaliser::default())
}

pub fn loopiness_with(
    f: &BinaryFunction,
    e: usize,
    lambda: &Rational,
    normaliser: Normaliser,
) -> Result<f64> {
    coloopiness_with(f, e, &dual_lambda(lambda)?, normaliser)
}

/// Q^(λ)f(E) − Q^(λ)f(E∖e).
pub fn coloopiness(f: &BinaryFunction, e: usize, lambda: &Rational) -> Result<f64> {
    coloopiness_with(f, e, lambda, Normaliser::default())
}

pub fn coloopiness_with(
    f: &BinaryFunction,
    e: usize,
    lambda: &Rational,
    normaliser: Normaliser,
) -> Result<f64> {
    if e >= f.ground_size {
        return Err(Error::InvalidEdge {
            index: e,
            edges: f.ground_size,
        });
    }
    let q = QRank::new(f, lambda, normaliser)?;
    let full = f.full_mask();
    Ok(q.at(full)? - q.at(full & !(1 << e))?)
}

/// R^(λ)(f;x,y) = y^{−Q(E)} Σ_X (xy)^{Q(E)−Q(X)} y^{|X|}.
pub fn lambda_tw(f: &BinaryFunction, x: f64, y: f64, lambda: &Rational) -> Result<f64> {
    lambda_tw_with(f, x, y, lambda, Normaliser::default())
}

pub fn lambda_tw_with(
    f: &BinaryFunction,
    x: f64,
    y: f64,
    lambda: &Rational,
    normaliser: Normaliser,
) -> Result<f64> {
    if x <= 0.0 || y <= 0.0 {
        return Err(Error::InvalidArgument(
            "λ-Tutte–Whitney needs x, y > 0".into(),
        ));
    }
    let q = QRank::new(f, lambda, normaliser)?;
    let qe = q.at(f.full_mask())?;
    let mut sum = 0.0;
    for s in 0..=f.full_mask() {
        sum += (x * y).powf(qe - q.at(s)?) * y.powi(s.count_ones() as i32);
    }
    Ok(y.powf(-qe) * sum)
}

/// Both sides of the λ-deletion–contraction relation at element `e`.
pub fn deletion_contraction_sides(
    f: &BinaryFunction,
    e: usize,
    x: f64,
    y: f64,
    lambda: &Rational,
    normaliser: Normaliser,
) -> Result<(f64, f64)> {
    let dual = dual_lambda(lambda)?;
    let lhs = lambda_tw_with(f, x, y, lambda, normaliser)?;
    let coloop = coloopiness_with(f, e, lambda, normaliser)?;
    let looped = loopiness_with(f, e, lambda, normaliser)?;
    let reduced = lambda_tw_with(&lambda_reduce(f, e, lambda)?, x, y, lambda, normaliser)?;
    let dual_reduced = lambda_tw_with(&lambda_reduce(f, e, &dual)?, x, y, lambda, normaliser)?;
    Ok((
        lhs,
        x.powf(coloop) * reduced + y.powf(looped) * dual_reduced,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;
    use crate::poly::{int, rat};

    fn table(f: &BinaryFunction) -> Vec<i64> {
        f.values()
            .iter()
            .map(|v| v.to_integer().try_into().unwrap())
            .collect()
    }

    #[test]
    fn graphic_examples() {
        assert_eq!(table(&graphic(&complete(2)).unwrap()), vec![1, 1]);
        assert_eq!(table(&graphic(&single_loop()).unwrap()), vec![1, 0]);
        let c3 = graphic(&complete(3)).unwrap();
        let ones: Vec<u64> = (0..8).filter(|&x| c3.value(x).is_one()).collect();
        assert_eq!(ones, vec![0, 3, 5, 6]);
        assert_eq!(c3.vertex_count, 3);
    }

    #[test]
    fn reduction_examples() {
        let c3 = complete(3);
        let f = graphic(&c3).unwrap();
        for e in 0..3 {
            let contracted = graphic(&c3.contract_edge(e).unwrap()).unwrap();
            let deleted = graphic(&c3.delete_edge(e).unwrap()).unwrap();
            assert_eq!(
                lambda_reduce(&f, e, &int(0)).unwrap().values(),
                contracted.values()
            );
            assert_eq!(
                lambda_reduce(&f, e, &int(1)).unwrap().values(),
                deleted.values()
            );
        }
        let k2 = lambda_reduce(&graphic(&complete(2)).unwrap(), 0, &rat(1, 3)).unwrap();
        assert_eq!(k2.values(), &[int(1)]);
        // f(∅) + λ f({e}) = 1 − 1
        assert_eq!(
            lambda_reduce(&graphic(&complete(2)).unwrap(), 0, &int(-1)),
            Err(Error::ReductionUndefined)
        );
    }

    #[test]
    fn dual_examples() {
        assert_eq!(dual_lambda(&int(0)).unwrap(), int(1));
        assert_eq!(dual_lambda(&int(1)).unwrap(), int(0));
        assert_eq!(dual_lambda(&rat(1, 3)).unwrap(), rat(1, 2));
        assert_eq!(
            dual_lambda(&dual_lambda(&rat(2, 5)).unwrap()).unwrap(),
            rat(2, 5)
        );
        assert!(dual_lambda(&int(-1)).is_err());
    }

    #[test]
    fn q_rank_examples() {
        let f = graphic(&complete(3)).unwrap();
        assert!((q_rank(&f, 1, &int(1)).unwrap() - 1.0).abs() < 1e-9);
        assert!((q_rank(&f, 7, &int(1)).unwrap() - 2.0).abs() < 1e-9);
        assert!(q_rank(&f, 0, &rat(1, 3)).unwrap().abs() < 1e-9);
        // λ = 0 gives the dual rank: ρ*(E) = 1 for a triangle
        assert!((q_rank(&f, 7, &int(0)).unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn q_undefined() {
        let f = BinaryFunction::new(1, vec![int(1), int(-2)], 2).unwrap();
        assert_eq!(q_rank(&f, 1, &int(1)), Err(Error::QUndefined));
    }

    #[test]
    fn loopiness_examples() {
        let k2 = graphic(&complete(2)).unwrap();
        assert!((coloopiness(&k2, 0, &int(1)).unwrap() - 1.0).abs() < 1e-9);
        let lp = graphic(&single_loop()).unwrap();
        assert!(coloopiness(&lp, 0, &int(1)).unwrap().abs() < 1e-9);
        let c3 = graphic(&complete(3)).unwrap();
        let lam = rat(1, 3);
        let dual = dual_lambda(&lam).unwrap();
        let a = coloopiness(&c3, 0, &lam).unwrap();
        let b = loopiness(&c3, 0, &dual).unwrap();
        assert!((a - b).abs() < 1e-9);
    }

    #[test]
    fn lambda_tw_examples() {
        let empty = BinaryFunction::new(0, vec![int(1)], 0).unwrap();
        assert!((lambda_tw(&empty, 2.0, 3.0, &rat(1, 3)).unwrap() - 1.0).abs() < 1e-12);
        // λ = 1 on a graphic function is the Whitney rank generating function at (x, y)
        // with the y-shift: R_1 = Σ x^{ρ(E)−ρ(X)} y^{|X|−ρ(X)}; triangle at (2,2) = 4+6+3+2
        let c3 = graphic(&complete(3)).unwrap();
        assert!((lambda_tw(&c3, 2.0, 2.0, &int(1)).unwrap() - 15.0).abs() < 1e-9);
        let k2 = graphic(&complete(2)).unwrap();
        let (l, r) =
            deletion_contraction_sides(&k2, 0, 2.0, 2.0, &int(1), Normaliser::SubsetSize).unwrap();
        assert!((l - r).abs() <= 1e-9 * l.abs());
    }

    #[test]
    fn json_round_trip() {
        let f = lambda_reduce(&graphic(&complete(3)).unwrap(), 1, &rat(2, 5)).unwrap();
        let text = f.to_json();
        assert!(text.starts_with("{\"m\":2,\"vertex_count\":3,\"values\":["));
        assert_eq!(BinaryFunction::from_json(&text).unwrap(), f);
        assert!(
            BinaryFunction::from_json("{\"m\":2,\"vertex_count\":1,\"values\":[\"1\"]}").is_err()
        );
    }

    fn squeeze(x: u64, e: usize) -> u64 {
        let low = x & ((1 << e) - 1);
        low | (x >> (e + 1)) << e
    }

    #[test]
    fn squeeze_inverts_unsqueeze() {
        for x in 0..64 {
            for e in 0..6 {
                assert_eq!(squeeze(unsqueeze(x, e), e), x);
            }
        }
    }
}
