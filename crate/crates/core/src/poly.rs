//! Sparse multivariate polynomials over exact rationals.
//!
//! Variables are identified by name. Every polynomial is kept in a normal
//! form: variable names sorted and unique, no variable that is absent from
//! every term, no zero coefficients. Derived equality is therefore exact
//! structural equality of the represented polynomials.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Formats as `num` or `num/den`.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(
            BigInt::from_str(s).map_err(|_| bad())?,
        )),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        MultiPoly {
            vars: Vec::new(),
            terms,
        }
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(int(c))
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![1], Rational::one());
        MultiPoly {
            vars: vec![name.to_string()],
            terms,
        }
    }

    /// `c * name^k`.
    pub fn monomial(c: Rational, name: &str, k: u32) -> Self {
        if k == 0 {
            return Self::constant(c);
        }
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![k], c);
        }
        Self::normalised(vec![name.to_string()], terms)
    }

    /// Builds from raw parts; variables may be unsorted or repeated-free in any order.
    pub fn from_terms(
        vars: Vec<String>,
        terms: impl IntoIterator<Item = (Vec<u32>, Rational)>,
    ) -> Result<Self> {
        let mut sorted = vars.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != vars.len() {
            return Err(Error::Parse("repeated variable name".into()));
        }
        let perm: Vec<usize> = vars
            .iter()
            .map(|v| sorted.binary_search(v).unwrap())
            .collect();
        let mut map: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
        for (exp, c) in terms {
            if exp.len() != vars.len() {
                return Err(Error::Parse("exponent vector length mismatch".into()));
            }
            let mut e = vec![0; sorted.len()];
            for (i, k) in exp.into_iter().enumerate() {
                e[perm[i]] = k;
            }
            *map.entry(e).or_insert_with(Rational::zero) += c;
        }
        Ok(Self::normalised(sorted, map))
    }

    fn normalised(vars: Vec<String>, mut terms: BTreeMap<Vec<u32>, Rational>) -> Self {
        terms.retain(|_, c| !c.is_zero());
        let used: Vec<bool> = (0..vars.len())
            .map(|i| terms.keys().any(|e| e[i] > 0))
            .collect();
        if used.iter().all(|&u| u) {
            return MultiPoly { vars, terms };
        }
        let vars2 = vars
            .iter()
            .zip(&used)
            .filter(|(_, &u)| u)
            .map(|(v, _)| v.clone())
            .collect();
        let terms2 = terms
            .into_iter()
            .map(|(e, c)| {
                let e2 = e
                    .iter()
                    .zip(&used)
                    .filter(|(_, &u)| u)
                    .map(|(&k, _)| k)
                    .collect();
                (e2, c)
            })
            .collect();
        MultiPoly {
            vars: vars2,
            terms: terms2,
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    /// Constant value if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.vars.is_empty() {
            Some(
                self.terms
                    .get(&Vec::new())
                    .cloned()
                    .unwrap_or_else(Rational::zero),
            )
        } else {
            None
        }
    }

    /// Coefficient of the monomial given as (name, exponent) pairs.
    pub fn coeff(&self, monomial: &[(&str, u32)]) -> Rational {
        let mut e = vec![0u32; self.vars.len()];
        for &(name, k) in monomial {
            match self.vars.iter().position(|v| v == name) {
                Some(i) => e[i] = k,
                None if k == 0 => {}
                None => return Rational::zero(),
            }
        }
        self.terms.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree_in(&self, name: &str) -> u32 {
        match self.vars.iter().position(|v| v == name) {
            Some(i) => self.terms.keys().map(|e| e[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    /// Coefficients of a univariate polynomial in `name`, lowest degree first.
    /// Returns `None` if another variable occurs.
    pub fn univariate_coeffs(&self, name: &str) -> Option<Vec<Rational>> {
        if self.vars.iter().any(|v| v != name) {
            return None;
        }
        let d = self.degree_in(name) as usize;
        let mut out = vec![Rational::zero(); d + 1];
        for (e, c) in &self.terms {
            let k = e.first().copied().unwrap_or(0) as usize;
            out[k] = c.clone();
        }
        Some(out)
    }

    fn unify(a: &MultiPoly, b: &MultiPoly) -> (Vec<String>, Vec<usize>, Vec<usize>) {
        let mut vars: Vec<String> = a.vars.iter().chain(&b.vars).cloned().collect();
        vars.sort();
        vars.dedup();
        let ia = a
            .vars
            .iter()
            .map(|v| vars.binary_search(v).unwrap())
            .collect();
        let ib = b
            .vars
            .iter()
            .map(|v| vars.binary_search(v).unwrap())
            .collect();
        (vars, ia, ib)
    }

    fn lift(e: &[u32], idx: &[usize], len: usize) -> Vec<u32> {
        let mut out = vec![0; len];
        for (k, &i) in e.iter().zip(idx) {
            out[i] = *k;
        }
        out
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let (vars, ia, ib) = Self::unify(self, other);
        let len = vars.len();
        let mut terms: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
        for (e, c) in &self.terms {
            terms.insert(Self::lift(e, &ia, len), c.clone());
        }
        for (e, c) in &other.terms {
            *terms
                .entry(Self::lift(e, &ib, len))
                .or_insert_with(Rational::zero) += c;
        }
        Self::normalised(vars, terms)
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let (vars, ia, ib) = Self::unify(self, other);
        let len = vars.len();
        let lb: Vec<(Vec<u32>, &Rational)> = other
            .terms
            .iter()
            .map(|(e, c)| (Self::lift(e, &ib, len), c))
            .collect();
        let mut terms: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            let ea = Self::lift(ea, &ia, len);
            for (eb, cb) in &lb {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                *terms.entry(e).or_insert_with(Rational::zero) += ca * *cb;
            }
        }
        Self::normalised(vars, terms)
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut result = MultiPoly::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = MultiPoly::mul(&base, &base);
            }
        }
        result
    }

    /// Replaces every occurrence of `var` by `replacement`.
    pub fn substitute(&self, var: &str, replacement: &MultiPoly) -> MultiPoly {
        let Some(idx) = self.vars.iter().position(|v| v == var) else {
            return self.clone();
        };
        let mut powers: Vec<MultiPoly> = vec![MultiPoly::one()];
        let mut out = MultiPoly::zero();
        // Group terms by the remaining monomial so each power is multiplied once.
        let mut grouped: BTreeMap<u32, BTreeMap<Vec<u32>, Rational>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            let k = rest[idx];
            rest[idx] = 0;
            grouped.entry(k).or_default().insert(rest, c.clone());
        }
        for (k, rest_terms) in grouped {
            while powers.len() <= k as usize {
                let next = powers.last().unwrap().mul(replacement);
                powers.push(next);
            }
            let rest = Self::normalised(self.vars.clone(), rest_terms);
            out = out.add(&rest.mul(&powers[k as usize]));
        }
        out
    }

    pub fn substitute_value(&self, var: &str, value: &Rational) -> MultiPoly {
        self.substitute(var, &MultiPoly::constant(value.clone()))
    }

    pub fn rename(&self, from: &str, to: &str) -> MultiPoly {
        self.substitute(from, &MultiPoly::var(to))
    }

    pub fn evaluate(&self, bindings: &HashMap<String, Rational>) -> Result<Rational> {
        let values: Vec<&Rational> = self
            .vars
            .iter()
            .map(|v| {
                bindings
                    .get(v)
                    .ok_or_else(|| Error::UnboundVariable(v.clone()))
            })
            .collect::<Result<_>>()?;
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (k, v) in e.iter().zip(&values) {
                if *k > 0 {
                    t *= num::pow::pow((*v).clone(), *k as usize);
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Convenience form of [`evaluate`](Self::evaluate).
    pub fn eval(&self, bindings: &[(&str, Rational)]) -> Result<Rational> {
        let map = bindings
            .iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect();
        self.evaluate(&map)
    }

    /// Unique polynomial in `var` of degree below `points.len()` through all points.
    pub fn interpolate(points: &[(Rational, Rational)], var: &str) -> Result<MultiPoly> {
        for i in 0..points.len() {
            for j in 0..i {
                if points[i].0 == points[j].0 {
                    return Err(Error::DuplicateAbscissa(format_rational(&points[i].0)));
                }
            }
        }
        // Newton divided differences.
        let n = points.len();
        let mut coef: Vec<Rational> = points.iter().map(|p| p.1.clone()).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                let num = &coef[i] - &coef[i - 1];
                let den = &points[i].0 - &points[i - level].0;
                coef[i] = num / den;
            }
        }
        let x = MultiPoly::var(var);
        let mut result = MultiPoly::zero();
        for i in (0..n).rev() {
            let shifted = MultiPoly::sub(&x, &MultiPoly::constant(points[i].0.clone()));
            result = result
                .mul(&shifted)
                .add(&MultiPoly::constant(coef[i].clone()));
        }
        Ok(result)
    }

    /// Terms in canonical order: total degree descending, then exponent
    /// vector lexicographically descending (variables in name order).
    pub fn canonical_terms(&self) -> Vec<(&Vec<u32>, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        v
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            vars: self.vars.clone(),
            terms: self
                .canonical_terms()
                .into_iter()
                .map(|(e, c)| TermJson {
                    exp: e.clone(),
                    coef: format_rational(c),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &PolyJson) -> Result<MultiPoly> {
        let terms = j
            .terms
            .iter()
            .map(|t| Ok((t.exp.clone(), parse_rational(&t.coef)?)))
            .collect::<Result<Vec<_>>>()?;
        MultiPoly::from_terms(j.vars.clone(), terms)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub coef: String,
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.canonical_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            let is_monic = abs.is_one();
            let has_vars = e.iter().any(|&k| k > 0);
            if !is_monic || !has_vars {
                factors.push(format_rational(&abs));
            }
            for (k, v) in e.iter().zip(&self.vars) {
                match k {
                    0 => {}
                    1 => factors.push(v.clone()),
                    _ => factors.push(format!("{v}^{k}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl FromStr for MultiPoly {
    type Err = Error;

    /// Parses the canonical text form, e.g. `x^2 - 3/2*x*y + 1`.
    fn from_str(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        if chars.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let err = |msg: &str| Error::Parse(format!("{msg} in `{s}`"));
        let mut pos = 0;
        let mut result = MultiPoly::zero();
        while pos < chars.len() {
            let mut sign = Rational::one();
            if chars[pos] == '+' || chars[pos] == '-' {
                if chars[pos] == '-' {
                    sign = -sign;
                }
                pos += 1;
            } else if pos != 0 {
                return Err(err("expected `+` or `-`"));
            }
            let mut term = MultiPoly::constant(sign);
            loop {
                if pos >= chars.len() {
                    return Err(err("dangling operator"));
                }
                let c = chars[pos];
                if c.is_ascii_digit() {
                    let start = pos;
                    while pos < chars.len() && (chars[pos].is_ascii_digit() || chars[pos] == '/') {
                        pos += 1;
                    }
                    let lit: String = chars[start..pos].iter().collect();
                    term = term.scale(&parse_rational(&lit)?);
                } else if c.is_alphabetic() || c == '_' {
                    let start = pos;
                    while pos < chars.len() && (chars[pos].is_alphanumeric() || chars[pos] == '_') {
                        pos += 1;
                    }
                    let name: String = chars[start..pos].iter().collect();
                    let mut k = 1u32;
                    if pos < chars.len() && chars[pos] == '^' {
                        pos += 1;
                        let start = pos;
                        while pos < chars.len() && chars[pos].is_ascii_digit() {
                            pos += 1;
                        }
                        let lit: String = chars[start..pos].iter().collect();
                        k = lit.parse().map_err(|_| err("bad exponent"))?;
                    }
                    term = term.mul(&MultiPoly::var(&name).pow(k));
                } else {
                    return Err(err(&format!("unexpected `{c}`")));
                }
                if pos < chars.len() && chars[pos] == '*' {
                    pos += 1;
                    continue;
                }
                break;
            }
            result = result.add(&term);
        }
        Ok(result)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                MultiPoly::$method(self, rhs)
            }
        }
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                MultiPoly::$method(&self, &rhs)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                MultiPoly::$method(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly::neg(&self)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly::neg(self)
    }
}

/// Shorthand for parsing a literal in tests and examples.
pub fn poly(s: &str) -> MultiPoly {
    s.parse()
        .unwrap_or_else(|e| panic!("bad polynomial literal `{s}`: {e}"))
}
