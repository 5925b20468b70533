//! Legal Go positions: partial assignments in which every chromon (maximal
//! monochromatic connected set) has a liberty, i.e. a vertex with an
//! uncoloured neighbour.

use num::BigInt;

use crate::colouring::{PartialAssignment, LAMBDA};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::exec::{add_counts, fold_range};
use crate::graph::{Multigraph, UnionFind};
use crate::poly::{int, MultiPoly, Rational};

fn legal_raw(g: &Multigraph, colours: &[u32]) -> bool {
    let n = g.n();
    let mut uf = UnionFind::new(n);
    let mut liberty = vec![false; n];
    for &(u, v) in g.edges() {
        match (colours[u], colours[v]) {
            (0, 0) => {}
            (0, _) => liberty[v] = true,
            (_, 0) => liberty[u] = true,
            (a, b) if a == b => {
                uf.union(u, v);
            }
            _ => {}
        }
    }
    let mut free = vec![false; n];
    for v in 0..n {
        if liberty[v] {
            free[uf.find(v)] = true;
        }
    }
    (0..n).all(|v| colours[v] == 0 || free[uf.find(v)])
}

pub fn is_legal(g: &Multigraph, f: &PartialAssignment) -> bool {
    legal_raw(g, f.raw())
}

/// Legal λ-positions counted by number of coloured vertices.
fn legal_histogram(g: &Multigraph, lambda: u32, cfg: &Config) -> Result<Vec<u64>> {
    let n = g.n();
    let base = lambda as u64 + 1;
    let total = cfg.enumeration_size("positions", base, n)?;
    Ok(fold_range(
        cfg.exec,
        total,
        || vec![0u64; n + 1],
        |mut acc, mut idx| {
            let mut colours = vec![0u32; n];
            for c in colours.iter_mut() {
                *c = (idx % base) as u32;
                idx /= base;
            }
            if legal_raw(g, &colours) {
                acc[colours.iter().filter(|&&c| c != 0).count()] += 1;
            }
            acc
        },
        add_counts,
    ))
}

pub fn go_count(g: &Multigraph, lambda: u32) -> Result<u64> {
    go_count_with(g, lambda, &Config::default())
}

pub fn go_count_with(g: &Multigraph, lambda: u32, cfg: &Config) -> Result<u64> {
    Ok(legal_histogram(g, lambda, cfg)?.iter().sum())
}

/// Go^#(G; λ), the number of legal λ-positions, as a polynomial in `l`.
///
/// Counted at λ = 0..=n and interpolated; the interpolant is checked
/// against a fresh count at λ = n + 1.
pub fn go_count_poly(g: &Multigraph) -> Result<MultiPoly> {
    go_count_poly_with(g, &Config::default())
}

pub fn go_count_poly_with(g: &Multigraph, cfg: &Config) -> Result<MultiPoly> {
    let n = g.n() as u32;
    let points = (0..=n)
        .map(|l| {
            Ok((
                int(l as i64),
                Rational::from_integer(BigInt::from(go_count_with(g, l, cfg)?)),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let poly = MultiPoly::interpolate(&points, LAMBDA)?;
    let check = go_count_with(g, n + 1, cfg)?;
    let predicted = poly.eval(&[(LAMBDA, int(n as i64 + 1))])?;
    if predicted != Rational::from_integer(BigInt::from(check)) {
        return Err(Error::InvalidArgument(format!(
            "legal-position count {check} at λ = {} disagrees with the interpolant",
            n + 1
        )));
    }
    Ok(poly)
}

/// Pr(a random partial λ-assignment is legal) = Σ_legal p^{|dom f|} (1 − λp)^{n−|dom f|}.
pub fn go_prob_poly(g: &Multigraph, lambda: u32) -> Result<MultiPoly> {
    go_prob_poly_with(g, lambda, &Config::default())
}

pub fn go_prob_poly_with(g: &Multigraph, lambda: u32, cfg: &Config) -> Result<MultiPoly> {
    if lambda == 0 {
        return Err(Error::InvalidArgument("Go polynomials need λ ≥ 1".into()));
    }
    let n = g.n();
    let p = MultiPoly::var("p");
    let r = MultiPoly::one() - p.scale(&int(lambda as i64));
    Ok(legal_histogram(g, lambda, cfg)?
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .fold(MultiPoly::zero(), |acc, (k, &c)| {
            acc + p
                .pow(k as u32)
                .mul(&r.pow((n - k) as u32))
                .scale(&int(c as i64))
        }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;
    use crate::poly::{poly, rat};

    fn assign(lambda: u32, c: &[u32]) -> PartialAssignment {
        PartialAssignment::new(lambda, c.iter().map(|&x| (x != 0).then_some(x)).collect()).unwrap()
    }

    #[test]
    fn legality_examples() {
        assert!(is_legal(&cycle(4).unwrap(), &assign(2, &[0, 0, 0, 0])));
        assert!(!is_legal(&complete(2), &assign(2, &[1, 1])));
        assert!(is_legal(&complete(2), &assign(2, &[1, 0])));
        // two single-stone chromons capturing each other
        assert!(!is_legal(&complete(2), &assign(2, &[1, 2])));
        // a chain of one colour shares its liberty
        assert!(is_legal(&path(3), &assign(2, &[1, 1, 0])));
    }

    #[test]
    fn count_examples() {
        assert_eq!(
            go_count_poly(&cycle(4).unwrap()).unwrap(),
            poly("1 + 14*l^2")
        );
        assert_eq!(go_count_poly(&null(1)).unwrap(), poly("1"));
        assert_eq!(go_count_poly(&complete(2)).unwrap(), poly("1 + 2*l"));
    }

    #[test]
    fn probability_examples() {
        assert_eq!(go_prob_poly(&null(1), 2).unwrap(), poly("1 - 2*p"));
        // (1 − 2p)² + 4p(1 − 2p)
        assert_eq!(go_prob_poly(&complete(2), 2).unwrap(), poly("1 - 4*p^2"));
        let v = go_prob_poly(&null(1), 3)
            .unwrap()
            .eval(&[("p", rat(1, 4))])
            .unwrap();
        assert_eq!(v, rat(1, 4));
        assert!(go_prob_poly(&null(1), 0).is_err());
    }
}
