//! Invariant selection and the value each one produces.

use std::collections::BTreeMap;

use clap::{Args, ValueEnum};
use graphpoly::binary::{graphic_with, lambda_tw};
use graphpoly::colouring::{ec_labelled_with, fc_labelled_with, pc_labelled_with, LAMBDA};
use graphpoly::go::{go_count_poly_with, go_prob_poly_with};
use graphpoly::invariants::{
    bounded_chromon_count_with, genus_distribution_with, hom_cycle_count_with,
};
use graphpoly::partition::{ising_reduced_with, potts_reduced_with, symat_reduced_with, Prefactor};
use graphpoly::poly::{int, parse_rational};
use graphpoly::tutte::{
    bp_poly_with, chromatic_from_tutte, edge_chromatic_count_poly, tutte_poly_with,
    whitney_rank_poly_with, TutteOptions,
};
use graphpoly::{Config, Error, LabelledGraph, MultiPoly, Result};
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Invariant {
    Tutte,
    Whitney,
    Chromatic,
    EdgeChromatic,
    Bp,
    Potts,
    Ising,
    Symat,
    Pc,
    PcFixed,
    Ec,
    Fc,
    GoCount,
    GoProb,
    Homcyc,
    Mc,
    GenusDist,
    LambdaTw,
}

impl Invariant {
    pub fn name(self) -> String {
        self.to_possible_value()
            .expect("no skipped variants")
            .get_name()
            .to_string()
    }

    /// Whether C/U vertex labels mean anything for this invariant.
    fn reads_labels(self) -> bool {
        matches!(
            self,
            Invariant::Pc | Invariant::PcFixed | Invariant::Ec | Invariant::Fc
        )
    }
}

#[derive(Args, Clone, Debug, Default)]
pub struct Params {
    /// Number of colours λ (a rational for lambda-tw)
    #[arg(long)]
    pub lambda: Option<String>,
    /// Number of spin states, or cycle length for homcyc
    #[arg(long)]
    pub q: Option<u64>,
    /// Chromon bound for mc
    #[arg(long)]
    pub s: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    pub x: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub y: Option<f64>,
    /// Count only surjective homomorphisms (homcyc)
    #[arg(long)]
    pub surjective: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Report {
    Poly(MultiPoly, Option<Prefactor>),
    Count(u64),
    Distribution(BTreeMap<usize, u64>),
    Real(f64),
}

impl Report {
    pub fn text(&self) -> String {
        match self {
            Report::Poly(p, None) => p.to_string(),
            Report::Poly(p, Some(pre)) => format!("{p}\nprefactor: {pre}"),
            Report::Count(c) => c.to_string(),
            Report::Distribution(d) => d
                .iter()
                .map(|(g, c)| format!("{g}: {c}"))
                .collect::<Vec<_>>()
                .join("\n"),
            Report::Real(r) => format!("{r}"),
        }
    }

    pub fn to_json(&self, inv: Invariant) -> Value {
        let (kind, value) = match self {
            Report::Poly(p, _) => (
                "polynomial",
                serde_json::to_value(p.to_json()).expect("serialisable"),
            ),
            Report::Count(c) => ("count", json!(c)),
            Report::Distribution(d) => (
                "distribution",
                json!(d
                    .iter()
                    .map(|(g, c)| (g.to_string(), *c))
                    .collect::<BTreeMap<_, _>>()),
            ),
            Report::Real(r) => ("real", json!(r)),
        };
        let mut out = json!({
            "invariant": inv.name(),
            "kind": kind,
            "value": value,
            "text": match self {
                Report::Poly(p, _) => p.to_string(),
                other => other.text(),
            },
        });
        if let Report::Poly(_, Some(pre)) = self {
            out["prefactor"] = json!(pre.to_string());
        }
        out
    }
}

fn missing(what: &str, inv: Invariant) -> Error {
    Error::InvalidArgument(format!("{} needs --{what}", inv.name()))
}

fn lambda_u32(p: &Params, inv: Invariant) -> Result<u32> {
    let s = p.lambda.as_deref().ok_or_else(|| missing("lambda", inv))?;
    s.trim().parse().map_err(|_| {
        Error::InvalidArgument(format!("--lambda {s}: expected a nonnegative integer"))
    })
}

pub fn compute(inv: Invariant, l: &LabelledGraph, p: &Params, cfg: &Config) -> Result<Report> {
    if !inv.reads_labels() && (l.coloured | l.uncoloured) != 0 {
        return Err(Error::InvalidArgument(format!(
            "{} does not take C/U vertex labels",
            inv.name()
        )));
    }
    let g = &l.graph;
    let tutte = || {
        let opts = TutteOptions {
            canon_limit: cfg.canon_limit,
            memo_capacity: cfg.memo_capacity,
            ..TutteOptions::default()
        };
        tutte_poly_with(g, &opts)
    };
    let poly = |p: MultiPoly| Report::Poly(p, None);
    Ok(match inv {
        Invariant::Tutte => poly(tutte()),
        Invariant::Whitney => poly(whitney_rank_poly_with(g, cfg)?),
        Invariant::Chromatic => poly(chromatic_from_tutte(g, &tutte())),
        Invariant::EdgeChromatic => poly(edge_chromatic_count_poly(g)?),
        Invariant::Bp => poly(bp_poly_with(g, cfg)?),
        Invariant::Potts => poly(potts_reduced_with(
            g,
            p.q.ok_or_else(|| missing("q", inv))?,
            cfg,
        )?),
        Invariant::Ising => Report::Poly(
            ising_reduced_with(g, cfg)?,
            Some(Prefactor {
                couplings: vec![("K".into(), 1)],
                edges: g.m(),
            }),
        ),
        Invariant::Symat => Report::Poly(
            symat_reduced_with(g, cfg)?,
            Some(Prefactor {
                couplings: vec![("K".into(), 2), ("K'".into(), 1)],
                edges: g.m(),
            }),
        ),
        Invariant::Pc => poly(pc_labelled_with(l, cfg)?),
        Invariant::PcFixed => {
            let lambda = lambda_u32(p, inv)?;
            poly(pc_labelled_with(l, cfg)?.substitute_value(LAMBDA, &int(lambda as i64)))
        }
        Invariant::Ec => poly(ec_labelled_with(l, lambda_u32(p, inv)?, cfg)?),
        Invariant::Fc => poly(fc_labelled_with(l, lambda_u32(p, inv)?, cfg)?),
        Invariant::GoCount => poly(go_count_poly_with(g, cfg)?),
        Invariant::GoProb => poly(go_prob_poly_with(g, lambda_u32(p, inv)?, cfg)?),
        Invariant::Homcyc => Report::Count(hom_cycle_count_with(
            g,
            p.q.ok_or_else(|| missing("q", inv))?,
            p.surjective,
            cfg,
        )?),
        Invariant::Mc => Report::Count(bounded_chromon_count_with(
            g,
            p.s.ok_or_else(|| missing("s", inv))?,
            cfg,
        )?),
        Invariant::GenusDist => Report::Distribution(genus_distribution_with(g, cfg)?),
        Invariant::LambdaTw => {
            let s = p.lambda.as_deref().ok_or_else(|| missing("lambda", inv))?;
            let lambda = parse_rational(s.trim())?;
            let x = p.x.ok_or_else(|| missing("x", inv))?;
            let y = p.y.ok_or_else(|| missing("y", inv))?;
            Report::Real(lambda_tw(&graphic_with(g, cfg)?, x, y, &lambda)?)
        }
    })
}
