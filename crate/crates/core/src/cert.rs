//! Certificates of polynomial equivalence: formal sums of products of
//! graphs, rewritten one rule at a time.
//!
//! Rules, with each graph standing for its polynomial:
//!
//! | rule   | Tutte                      | chromatic                  |
//! |--------|----------------------------|----------------------------|
//! | DC     | `G → G∖e + G/e`            | `G → G∖e − G/e`            |
//! | AI     | `G → (G+uv) − G/uv`        | `G → (G+uv) + G/uv`        |
//! | BLOCKS | `G → B_1 ⋯ B_k`            | —                          |
//! | GLUE   | `B_1 ⋯ B_k → G`            | —                          |
//! | ISO    | `G → H` for `H ≅ G`        | same                       |
//! | ALG    | merge terms with isomorphic factors, drop zeros |       |
//!
//! DC and AI also run backwards (`reverse`): two terms, the located one and
//! a partner, fold into a single graph `H` given in the parameters.

use std::collections::HashSet;
use std::fmt;

use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::canon;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::exec::map_collect;
use crate::graph::{EdgeKind, Multigraph};
use crate::io::{format_edge_list, parse_edge_list};
use crate::poly::{format_rational, parse_rational, MultiPoly, Rational};
use crate::tutte::{chromatic_poly, tutte_poly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Context {
    Tutte,
    Chromatic,
}

impl Context {
    /// Sign of the second term produced by DC.
    fn dc_sign(self) -> Rational {
        match self {
            Context::Tutte => Rational::one(),
            Context::Chromatic => -Rational::one(),
        }
    }

    /// Sign of the second term produced by AI.
    fn ai_sign(self) -> Rational {
        -self.dc_sign()
    }

    pub fn polynomial(self, g: &Multigraph) -> MultiPoly {
        match self {
            Context::Tutte => tutte_poly(g),
            Context::Chromatic => chromatic_poly(g),
        }
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Context::Tutte => "tutte",
            Context::Chromatic => "chromatic",
        })
    }
}

impl std::str::FromStr for Context {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tutte" => Ok(Context::Tutte),
            "chromatic" => Ok(Context::Chromatic),
            _ => Err(Error::Parse(format!("unknown context `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[allow(clippy::upper_case_acronyms)]
pub enum Rule {
    DC,
    AI,
    BLOCKS,
    GLUE,
    ISO,
    ALG,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coef: Rational,
    pub factors: Vec<Multigraph>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertExpression {
    pub terms: Vec<Term>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Params {
    pub edge: Option<usize>,
    pub u: Option<usize>,
    pub v: Option<usize>,
    pub reverse: bool,
    pub graph: Option<Multigraph>,
    pub partner: Option<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertStep {
    pub rule: Rule,
    pub locus: (usize, usize),
    pub params: Params,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub context: Context,
    pub expressions: Vec<CertExpression>,
    pub steps: Vec<CertStep>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    /// `step` is 1-based; 0 means the certificate is malformed as a whole.
    Invalid {
        step: usize,
        reason: String,
    },
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

fn rule_err(msg: impl Into<String>) -> Error {
    Error::Rule(msg.into())
}

impl CertExpression {
    pub fn single(g: Multigraph) -> Self {
        CertExpression {
            terms: vec![Term {
                coef: Rational::one(),
                factors: vec![g],
            }],
        }
    }

    /// The graph, if this is `1 · G`.
    pub fn as_single(&self) -> Option<&Multigraph> {
        match self.terms.as_slice() {
            [t] if t.coef.is_one() && t.factors.len() == 1 => Some(&t.factors[0]),
            _ => None,
        }
    }

    /// Key equal for expressions that agree up to isomorphism and reordering.
    pub fn canonical_key(&self, limit: usize) -> Result<Vec<(Vec<Vec<u8>>, Rational)>> {
        let mut key = self
            .terms
            .iter()
            .map(|t| Ok((factor_key(&t.factors, limit)?, t.coef.clone())))
            .collect::<Result<Vec<_>>>()?;
        key.sort();
        Ok(key)
    }

    pub fn value(&self, context: Context) -> MultiPoly {
        expression_value(self, context)
    }
}

fn factor_key(factors: &[Multigraph], limit: usize) -> Result<Vec<Vec<u8>>> {
    let mut k = factors
        .iter()
        .map(|g| canon::canonical_form(g, limit))
        .collect::<Result<Vec<_>>>()?;
    k.sort();
    Ok(k)
}

impl fmt::Display for CertExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            let neg = t.coef.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = t.coef.abs();
            if !abs.is_one() {
                write!(f, "{}*", format_rational(&abs))?;
            }
            let gs: Vec<String> = t
                .factors
                .iter()
                .map(|g| {
                    let e: Vec<String> = g.edges().iter().map(|(a, b)| format!("{a}{b}")).collect();
                    format!("G{}[{}]", g.n(), e.join(","))
                })
                .collect();
            f.write_str(&gs.join("·"))?;
        }
        Ok(())
    }
}

/// Σ_terms coef · Π_factors Poly(factor).
pub fn expression_value(expr: &CertExpression, context: Context) -> MultiPoly {
    expr.terms.iter().fold(MultiPoly::zero(), |acc, t| {
        let prod = t
            .factors
            .iter()
            .fold(MultiPoly::one(), |p, g| p.mul(&context.polynomial(g)));
        acc + prod.scale(&t.coef)
    })
}

fn locate(expr: &CertExpression, locus: (usize, usize)) -> Result<(&Term, &Multigraph)> {
    let term = expr
        .terms
        .get(locus.0)
        .ok_or_else(|| rule_err(format!("no term {}", locus.0)))?;
    let g = term
        .factors
        .get(locus.1)
        .ok_or_else(|| rule_err(format!("term {} has no factor {}", locus.0, locus.1)))?;
    Ok((term, g))
}

fn with_factor(term: &Term, idx: usize, g: Multigraph, coef: Rational) -> Term {
    let mut factors = term.factors.clone();
    factors[idx] = g;
    Term { coef, factors }
}

fn others(term: &Term, idx: usize) -> Vec<Multigraph> {
    term.factors
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != idx)
        .map(|(_, g)| g.clone())
        .collect()
}

fn iso(a: &Multigraph, b: &Multigraph, limit: usize) -> Result<bool> {
    canon::is_isomorphic(a, b, limit)
}

fn block_key(graphs: &[Multigraph], limit: usize) -> Result<Vec<Vec<u8>>> {
    let blocks: Vec<Multigraph> = graphs.iter().flat_map(|g| g.blocks()).collect();
    factor_key(&blocks, limit)
}

fn need<T: Copy>(v: Option<T>, name: &str) -> Result<T> {
    v.ok_or_else(|| rule_err(format!("missing parameter `{name}`")))
}

/// Applies one rule; fails if it is not admissible at the given locus.
pub fn apply_rule(
    expr: &CertExpression,
    step: &CertStep,
    context: Context,
) -> Result<CertExpression> {
    apply_rule_with(expr, step, context, &Config::default())
}

pub fn apply_rule_with(
    expr: &CertExpression,
    step: &CertStep,
    context: Context,
    cfg: &Config,
) -> Result<CertExpression> {
    let limit = cfg.canon_limit;
    let p = &step.params;
    let (t, f) = step.locus;
    let mut terms = expr.terms.clone();
    check_params(step)?;
    match step.rule {
        Rule::ALG => return normalise(expr, limit),
        Rule::BLOCKS | Rule::GLUE if context == Context::Chromatic => {
            return Err(rule_err(format!("{:?} is not a chromatic rule", step.rule)));
        }
        _ => {}
    }
    let (term, g) = locate(expr, step.locus)?;
    match (step.rule, p.reverse) {
        (Rule::DC, false) => {
            let e = need(p.edge, "edge")?;
            let kind = g
                .classify_edge(e)
                .map_err(|_| rule_err(format!("no edge {e}")))?;
            if context == Context::Tutte && kind != EdgeKind::Ordinary {
                return Err(rule_err(
                    "Tutte deletion–contraction needs an edge that is neither a loop nor a bridge",
                ));
            }
            let deleted = with_factor(term, f, g.delete_edge(e)?, term.coef.clone());
            let contracted =
                with_factor(term, f, g.contract_edge(e)?, &term.coef * context.dc_sign());
            terms.splice(t..=t, [deleted, contracted]);
        }
        (Rule::AI, false) => {
            let (u, v) = (need(p.u, "u")?, need(p.v, "v")?);
            if u >= g.n() || v >= g.n() || u == v || g.adjacent(u, v) {
                return Err(rule_err(format!(
                    "AI needs distinct non-adjacent vertices, got {u},{v}"
                )));
            }
            if context == Context::Tutte && !same_component(g, u, v) {
                return Err(rule_err(
                    "Tutte addition–identification needs u and v in one component",
                ));
            }
            let added = with_factor(term, f, g.add_edge(u, v)?, term.coef.clone());
            let merged = with_factor(
                term,
                f,
                g.identify_vertices(u, v)?,
                &term.coef * context.ai_sign(),
            );
            terms.splice(t..=t, [added, merged]);
        }
        (Rule::DC, true) | (Rule::AI, true) => {
            let h = p
                .graph
                .as_ref()
                .ok_or_else(|| rule_err("missing parameter `graph`"))?;
            let (t2, f2) = need(p.partner, "partner")?;
            if t2 == t {
                return Err(rule_err("partner must be a different term"));
            }
            let (partner, b) = locate(expr, (t2, f2))?;
            let (first, second, sign) = if step.rule == Rule::DC {
                let e = need(p.edge, "edge")?;
                let kind = h
                    .classify_edge(e)
                    .map_err(|_| rule_err(format!("no edge {e} in H")))?;
                if context == Context::Tutte && kind != EdgeKind::Ordinary {
                    return Err(rule_err("Tutte deletion–contraction needs an edge that is neither a loop nor a bridge"));
                }
                (h.delete_edge(e)?, h.contract_edge(e)?, context.dc_sign())
            } else {
                let (u, v) = (need(p.u, "u")?, need(p.v, "v")?);
                if u >= h.n() || v >= h.n() || u == v || h.adjacent(u, v) {
                    return Err(rule_err(format!(
                        "AI needs distinct non-adjacent vertices of H, got {u},{v}"
                    )));
                }
                if context == Context::Tutte && !same_component(h, u, v) {
                    return Err(rule_err(
                        "Tutte addition–identification needs u and v in one component",
                    ));
                }
                (
                    h.add_edge(u, v)?,
                    h.identify_vertices(u, v)?,
                    context.ai_sign(),
                )
            };
            if !iso(g, &first, limit)? {
                return Err(rule_err(
                    "located factor does not match the first term of H",
                ));
            }
            if !iso(b, &second, limit)? {
                return Err(rule_err(
                    "partner factor does not match the second term of H",
                ));
            }
            if partner.coef != &term.coef * &sign {
                return Err(rule_err("partner coefficient does not match"));
            }
            if factor_key(&others(term, f), limit)? != factor_key(&others(partner, f2), limit)? {
                return Err(rule_err("the two terms differ outside the folded factors"));
            }
            terms[t] = with_factor(term, f, h.clone(), term.coef.clone());
            terms.remove(t2);
        }
        (Rule::BLOCKS, _) => {
            if g.m() == 0 {
                return Err(rule_err("BLOCKS needs at least one edge"));
            }
            let mut factors = term.factors.clone();
            factors.splice(f..=f, g.blocks());
            terms[t] = Term {
                coef: term.coef.clone(),
                factors,
            };
        }
        (Rule::GLUE, _) => {
            let h = p
                .graph
                .as_ref()
                .ok_or_else(|| rule_err("missing parameter `graph`"))?;
            for factor in &term.factors {
                let parts = factor.blocks();
                if parts.len() != 1 || !iso(&parts[0], factor, limit)? {
                    return Err(rule_err(
                        "GLUE needs every factor of the term to be a block",
                    ));
                }
            }
            if block_key(&term.factors, limit)? != block_key(std::slice::from_ref(h), limit)? {
                return Err(rule_err("block multisets differ"));
            }
            terms[t] = Term {
                coef: term.coef.clone(),
                factors: vec![h.clone()],
            };
        }
        (Rule::ISO, _) => {
            let h = p
                .graph
                .as_ref()
                .ok_or_else(|| rule_err("missing parameter `graph`"))?;
            if !iso(g, h, limit)? {
                return Err(rule_err("ISO replacement is not isomorphic"));
            }
            terms[t] = with_factor(term, f, h.clone(), term.coef.clone());
        }
        (Rule::ALG, _) => unreachable!(),
    }
    Ok(CertExpression { terms })
}

/// Rejects parameters the rule does not read, so that no field of a step is inert.
fn check_params(step: &CertStep) -> Result<()> {
    let p = &step.params;
    let (edge, vertices, graph, partner) = match (step.rule, p.reverse) {
        (Rule::DC, false) => (true, false, false, false),
        (Rule::AI, false) => (false, true, false, false),
        (Rule::DC, true) => (true, false, true, true),
        (Rule::AI, true) => (false, true, true, true),
        (Rule::GLUE | Rule::ISO, false) => (false, false, true, false),
        (Rule::BLOCKS | Rule::ALG, false) => (false, false, false, false),
        (rule, true) => return Err(rule_err(format!("{rule:?} has no reverse form"))),
    };
    let unused = [
        ("edge", !edge && p.edge.is_some()),
        ("u", !vertices && p.u.is_some()),
        ("v", !vertices && p.v.is_some()),
        ("graph", !graph && p.graph.is_some()),
        ("partner", !partner && p.partner.is_some()),
    ];
    if let Some((name, _)) = unused.iter().find(|(_, bad)| *bad) {
        return Err(rule_err(format!(
            "{:?} takes no parameter `{name}`",
            step.rule
        )));
    }
    if step.rule == Rule::ALG && step.locus != (0, 0) {
        return Err(rule_err(
            "ALG acts on the whole expression; its locus must be (0, 0)",
        ));
    }
    Ok(())
}

fn same_component(g: &Multigraph, u: usize, v: usize) -> bool {
    let labels = g.component_labels();
    labels[u] == labels[v]
}

/// Merges terms with isomorphic factor multisets (first occurrence keeps
/// its position and graphs) and drops terms whose coefficient is zero.
fn normalise(expr: &CertExpression, limit: usize) -> Result<CertExpression> {
    let mut out: Vec<(Vec<Vec<u8>>, Term)> = Vec::new();
    for t in &expr.terms {
        let key = factor_key(&t.factors, limit)?;
        match out.iter_mut().find(|(k, _)| *k == key) {
            Some((_, existing)) => existing.coef += &t.coef,
            None => out.push((key, t.clone())),
        }
    }
    Ok(CertExpression {
        terms: out
            .into_iter()
            .map(|(_, t)| t)
            .filter(|t| !t.coef.is_zero())
            .collect(),
    })
}

/// Checks every step syntactically and every expression semantically.
pub fn verify(cert: &Certificate) -> Verdict {
    verify_with(cert, &Config::default())
}

pub fn verify_with(cert: &Certificate, cfg: &Config) -> Verdict {
    if cert.expressions.is_empty() {
        return Verdict::Invalid {
            step: 0,
            reason: "no expressions".into(),
        };
    }
    if cert.steps.len() + 1 != cert.expressions.len() {
        return Verdict::Invalid {
            step: 0,
            reason: format!(
                "{} steps for {} expressions",
                cert.steps.len(),
                cert.expressions.len()
            ),
        };
    }
    let target = expression_value(&cert.expressions[0], cert.context);
    for (i, step) in cert.steps.iter().enumerate() {
        let invalid = |reason: String| Verdict::Invalid {
            step: i + 1,
            reason,
        };
        let produced = match apply_rule_with(&cert.expressions[i], step, cert.context, cfg) {
            Ok(e) => e,
            Err(e) => return invalid(e.to_string()),
        };
        let next = &cert.expressions[i + 1];
        match (
            produced.canonical_key(cfg.canon_limit),
            next.canonical_key(cfg.canon_limit),
        ) {
            (Ok(a), Ok(b)) if a == b => {}
            (Err(e), _) | (_, Err(e)) => return invalid(e.to_string()),
            _ => return invalid(format!("rule produces {produced}, certificate has {next}")),
        }
        let value = expression_value(next, cert.context);
        if value != target {
            return invalid(format!("value changes to {value}, expected {target}"));
        }
    }
    Verdict::Valid
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotFound {
    NotEquivalent,
    DepthExhausted,
    Limit(String),
}

impl fmt::Display for NotFound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotFound::NotEquivalent => f.write_str("not equivalent"),
            NotFound::DepthExhausted => f.write_str("no certificate within the depth bound"),
            NotFound::Limit(s) => write!(f, "limit: {s}"),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SearchLimits {
    pub max_depth: usize,
    pub max_nodes: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_depth: 6,
            max_nodes: 200_000,
        }
    }
}

/// Every admissible single step from `expr`, in a fixed order.
pub fn successors(
    expr: &CertExpression,
    context: Context,
    goal: Option<&Multigraph>,
    cfg: &Config,
) -> Vec<(CertStep, CertExpression)> {
    let mut candidates: Vec<CertStep> = Vec::new();
    let step = |rule, locus, params| CertStep {
        rule,
        locus,
        params,
    };
    for (t, term) in expr.terms.iter().enumerate() {
        if context == Context::Tutte {
            if let Some(h) = goal {
                candidates.push(step(
                    Rule::GLUE,
                    (t, 0),
                    Params {
                        graph: Some(h.clone()),
                        ..Params::default()
                    },
                ));
            }
            for (f, g) in term.factors.iter().enumerate() {
                if g.m() > 0 && g.blocks().len() > 1 {
                    candidates.push(step(Rule::BLOCKS, (t, f), Params::default()));
                }
            }
        }
        for (f, g) in term.factors.iter().enumerate() {
            for e in 0..g.m() {
                candidates.push(step(
                    Rule::DC,
                    (t, f),
                    Params {
                        edge: Some(e),
                        ..Params::default()
                    },
                ));
            }
            for u in 0..g.n() {
                for v in u + 1..g.n() {
                    if !g.adjacent(u, v) {
                        candidates.push(step(
                            Rule::AI,
                            (t, f),
                            Params {
                                u: Some(u),
                                v: Some(v),
                                ..Params::default()
                            },
                        ));
                    }
                }
            }
        }
    }
    candidates.extend(reverse_candidates(expr, cfg.canon_limit));
    candidates.push(step(Rule::ALG, (0, 0), Params::default()));

    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for c in candidates {
        if let Ok(next) = apply_rule_with(expr, &c, context, cfg) {
            if next == *expr {
                continue;
            }
            if let Ok(key) = next.canonical_key(cfg.canon_limit) {
                if seen.insert(key) {
                    out.push((c, next));
                }
            }
        }
    }
    out
}

/// Reverse DC/AI steps: every graph `H` whose two rule terms match a pair of terms.
fn reverse_candidates(expr: &CertExpression, limit: usize) -> Vec<CertStep> {
    let mut out = Vec::new();
    for (t, term) in expr.terms.iter().enumerate() {
        for (t2, partner) in expr.terms.iter().enumerate() {
            if t == t2 {
                continue;
            }
            for (f, a) in term.factors.iter().enumerate() {
                for (f2, b) in partner.factors.iter().enumerate() {
                    if b.n() + 1 != a.n() {
                        continue;
                    }
                    // H = A + uv with the new edge contracting to B
                    for u in 0..a.n() {
                        for v in u..a.n() {
                            let h = a.with_edge(u, v);
                            let e = h.m() - 1;
                            if h.contract_edge(e)
                                .ok()
                                .is_some_and(|c| iso(&c, b, limit).unwrap_or(false))
                            {
                                out.push(CertStep {
                                    rule: Rule::DC,
                                    locus: (t, f),
                                    params: Params {
                                        edge: Some(e),
                                        reverse: true,
                                        graph: Some(h),
                                        partner: Some((t2, f2)),
                                        ..Params::default()
                                    },
                                });
                            }
                        }
                    }
                    // H = A ∖ e with the ends of e identifying to B
                    for e in 0..a.m() {
                        let (u, v) = a.edges()[e];
                        let h = a.delete_edge(e).expect("valid edge");
                        if u == v || h.adjacent(u, v) {
                            continue;
                        }
                        if h.identify_vertices(u, v)
                            .ok()
                            .is_some_and(|c| iso(&c, b, limit).unwrap_or(false))
                        {
                            out.push(CertStep {
                                rule: Rule::AI,
                                locus: (t, f),
                                params: Params {
                                    u: Some(u),
                                    v: Some(v),
                                    reverse: true,
                                    graph: Some(h),
                                    partner: Some((t2, f2)),
                                    ..Params::default()
                                },
                            });
                        }
                    }
                }
            }
        }
    }
    out
}

/// Breadth-first search for a shortest certificate from `g` to a graph
/// isomorphic to `h`. `NotFound` is not a proof that none exists.
pub fn search(
    g: &Multigraph,
    h: &Multigraph,
    context: Context,
    limits: SearchLimits,
) -> std::result::Result<Certificate, NotFound> {
    search_with(g, h, context, limits, &Config::default())
}

pub fn search_with(
    g: &Multigraph,
    h: &Multigraph,
    context: Context,
    limits: SearchLimits,
    cfg: &Config,
) -> std::result::Result<Certificate, NotFound> {
    if context.polynomial(g) != context.polynomial(h) {
        return Err(NotFound::NotEquivalent);
    }
    let limit = cfg.canon_limit;
    let too_big = |x: &Multigraph| x.n() > limit;
    if too_big(g) || too_big(h) {
        return Err(NotFound::Limit(format!("graphs above {limit} vertices")));
    }
    let is_goal = |e: &CertExpression| {
        e.as_single()
            .is_some_and(|x| iso(x, h, limit).unwrap_or(false))
    };

    struct Node {
        expr: CertExpression,
        parent: usize,
        step: Option<CertStep>,
    }
    let start = CertExpression::single(g.clone());
    let mut nodes = vec![Node {
        expr: start.clone(),
        parent: 0,
        step: None,
    }];
    let mut visited: HashSet<_> = [start.canonical_key(limit).expect("size checked")].into();
    let mut frontier = vec![0usize];
    let build = |nodes: &[Node], mut idx: usize| {
        let mut expressions = Vec::new();
        let mut steps = Vec::new();
        loop {
            expressions.push(nodes[idx].expr.clone());
            match &nodes[idx].step {
                Some(s) => {
                    steps.push(s.clone());
                    idx = nodes[idx].parent;
                }
                None => break,
            }
        }
        expressions.reverse();
        steps.reverse();
        Certificate {
            context,
            expressions,
            steps,
        }
    };
    if is_goal(&start) {
        return Ok(build(&nodes, 0));
    }
    for _ in 0..limits.max_depth {
        let exprs: Vec<&CertExpression> = frontier.iter().map(|&i| &nodes[i].expr).collect();
        let expanded = map_collect(cfg.exec, &exprs, |e| successors(e, context, Some(h), cfg));
        let mut next = Vec::new();
        for (&parent, succ) in frontier.iter().zip(expanded) {
            for (step, expr) in succ {
                let key = match expr.canonical_key(limit) {
                    Ok(k) => k,
                    Err(_) => continue,
                };
                if !visited.insert(key) {
                    continue;
                }
                let goal = is_goal(&expr);
                nodes.push(Node {
                    expr,
                    parent,
                    step: Some(step),
                });
                if goal {
                    return Ok(build(&nodes, nodes.len() - 1));
                }
                if nodes.len() > limits.max_nodes {
                    return Err(NotFound::Limit(format!(
                        "more than {} expressions",
                        limits.max_nodes
                    )));
                }
                next.push(nodes.len() - 1);
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Err(NotFound::DepthExhausted)
}

// JSON

#[derive(Serialize, Deserialize)]
struct TermJson {
    coef: String,
    factors: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct ExprJson {
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize, Default)]
struct ParamsJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    edge: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    u: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    v: Option<usize>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    reverse: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    graph: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    partner: Option<[usize; 2]>,
}

#[derive(Serialize, Deserialize)]
struct StepJson {
    rule: Rule,
    locus: [usize; 2],
    #[serde(default)]
    params: ParamsJson,
}

#[derive(Serialize, Deserialize)]
struct CertJson {
    context: Context,
    expressions: Vec<ExprJson>,
    steps: Vec<StepJson>,
}

impl CertExpression {
    fn to_json(&self) -> ExprJson {
        ExprJson {
            terms: self
                .terms
                .iter()
                .map(|t| TermJson {
                    coef: format_rational(&t.coef),
                    factors: t.factors.iter().map(format_edge_list).collect(),
                })
                .collect(),
        }
    }

    fn from_json(j: &ExprJson) -> Result<Self> {
        let terms = j
            .terms
            .iter()
            .map(|t| {
                if t.factors.is_empty() {
                    return Err(Error::Parse("a term needs at least one factor".into()));
                }
                Ok(Term {
                    coef: parse_rational(&t.coef)?,
                    factors: t
                        .factors
                        .iter()
                        .map(|s| parse_edge_list(s))
                        .collect::<Result<_>>()?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(CertExpression { terms })
    }
}

impl Certificate {
    pub fn to_json(&self) -> String {
        let j = CertJson {
            context: self.context,
            expressions: self
                .expressions
                .iter()
                .map(CertExpression::to_json)
                .collect(),
            steps: self
                .steps
                .iter()
                .map(|s| StepJson {
                    rule: s.rule,
                    locus: [s.locus.0, s.locus.1],
                    params: ParamsJson {
                        edge: s.params.edge,
                        u: s.params.u,
                        v: s.params.v,
                        reverse: s.params.reverse,
                        graph: s.params.graph.as_ref().map(format_edge_list),
                        partner: s.params.partner.map(|(a, b)| [a, b]),
                    },
                })
                .collect(),
        };
        serde_json::to_string_pretty(&j).expect("serialisable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: CertJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let expressions = j
            .expressions
            .iter()
            .map(CertExpression::from_json)
            .collect::<Result<_>>()?;
        let steps = j
            .steps
            .into_iter()
            .map(|s| {
                Ok(CertStep {
                    rule: s.rule,
                    locus: (s.locus[0], s.locus[1]),
                    params: Params {
                        edge: s.params.edge,
                        u: s.params.u,
                        v: s.params.v,
                        reverse: s.params.reverse,
                        graph: s.params.graph.as_deref().map(parse_edge_list).transpose()?,
                        partner: s.params.partner.map(|[a, b]| (a, b)),
                    },
                })
            })
            .collect::<Result<_>>()?;
        Ok(Certificate {
            context: j.context,
            expressions,
            steps,
        })
    }

    /// Whether the certificate starts and ends with single graphs.
    pub fn is_equivalence(&self) -> bool {
        self.expressions
            .first()
            .and_then(|e| e.as_single())
            .is_some()
            && self
                .expressions
                .last()
                .and_then(|e| e.as_single())
                .is_some()
    }
}

/// The two-step chromatic certificate `P_4 → (P_3 ⊔ K_1) − P_3 → K_{1,3}`,
/// on vertices a=0, b=1, c=2, d=3 with `P_4 = ab, bc, cd`.
pub fn p4_k13_certificate() -> Certificate {
    let p4 = Multigraph::new(4, [(0, 1), (1, 2), (2, 3)]).expect("valid");
    let p3_k1 = p4.delete_edge(2).expect("valid");
    let p3 = p4.contract_edge(2).expect("valid");
    // K_{1,3} centred at b: ab, bc, bd (the new edge)
    let k13 = p3_k1.with_edge(1, 3);
    Certificate {
        context: Context::Chromatic,
        expressions: vec![
            CertExpression::single(p4),
            CertExpression {
                terms: vec![
                    Term {
                        coef: Rational::one(),
                        factors: vec![p3_k1],
                    },
                    Term {
                        coef: -Rational::one(),
                        factors: vec![p3],
                    },
                ],
            },
            CertExpression::single(k13.clone()),
        ],
        steps: vec![
            CertStep {
                rule: Rule::DC,
                locus: (0, 0),
                params: Params {
                    edge: Some(2),
                    ..Params::default()
                },
            },
            CertStep {
                rule: Rule::DC,
                locus: (0, 0),
                params: Params {
                    edge: Some(2),
                    reverse: true,
                    graph: Some(k13),
                    partner: Some((1, 0)),
                    ..Params::default()
                },
            },
        ],
    }
}
