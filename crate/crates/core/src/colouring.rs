//! Partial colourings: the partial chromatic (PC), extendable colouring
//! (EC) and forced colouring (FC) polynomials, for plain and chromatically
//! labelled graphs.
//!
//! A random partial λ-assignment colours each vertex independently with a
//! given colour with probability `p` and leaves it uncoloured with
//! probability `1 − λp`. λ appears as the variable `l` in bivariate output.

use num::{One, Zero};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::exec::{add_counts, fold_range, map_collect};
use crate::graph::{LabelledGraph, Multigraph};
use crate::poly::{int, MultiPoly, Rational};
use crate::tutte::chromatic_poly;

pub const LAMBDA: &str = "l";
const MAX_LAMBDA: u32 = 63;

/// Colours `1..=λ` on some vertices; `0` means uncoloured.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialAssignment {
    lambda: u32,
    colours: Vec<u32>,
}

impl PartialAssignment {
    pub fn empty(n: usize, lambda: u32) -> Self {
        PartialAssignment {
            lambda,
            colours: vec![0; n],
        }
    }

    pub fn new(lambda: u32, colours: Vec<Option<u32>>) -> Result<Self> {
        if lambda > MAX_LAMBDA {
            return Err(Error::InvalidArgument(format!(
                "λ must be at most {MAX_LAMBDA}"
            )));
        }
        let colours = colours
            .into_iter()
            .map(|c| match c {
                Some(k) if k == 0 || k > lambda => Err(Error::InvalidArgument(format!(
                    "colour {k} outside 1..={lambda}"
                ))),
                Some(k) => Ok(k),
                None => Ok(0),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PartialAssignment { lambda, colours })
    }

    pub fn lambda(&self) -> u32 {
        self.lambda
    }

    pub fn len(&self) -> usize {
        self.colours.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colours.is_empty()
    }

    pub fn get(&self, v: usize) -> Option<u32> {
        match self.colours[v] {
            0 => None,
            c => Some(c),
        }
    }

    pub fn set(&mut self, v: usize, colour: Option<u32>) {
        self.colours[v] = colour.unwrap_or(0);
    }

    pub fn domain(&self) -> u64 {
        self.colours
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .fold(0u64, |m, (v, _)| m | 1 << v)
    }

    pub fn is_total(&self) -> bool {
        self.colours.iter().all(|&c| c != 0)
    }

    pub fn raw(&self) -> &[u32] {
        &self.colours
    }
}

fn check_lambda(lambda: u32) -> Result<()> {
    if lambda > MAX_LAMBDA {
        return Err(Error::InvalidArgument(format!(
            "λ must be at most {MAX_LAMBDA}"
        )));
    }
    Ok(())
}

/// Adjacency lists with multi-edges collapsed; a loop makes a vertex its own neighbour.
fn neighbours(g: &Multigraph) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); g.n()];
    for &(u, v) in g.edges() {
        adj[u].push(v);
        if u != v {
            adj[v].push(u);
        }
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    adj
}

/// The colour `v` is immediately forced to take, if any.
fn forced_colour(adj: &[Vec<usize>], colours: &[u32], v: usize, lambda: u32) -> Option<u32> {
    if lambda == 0 {
        return None;
    }
    let seen = adj[v]
        .iter()
        .filter(|&&u| colours[u] != 0)
        .fold(0u64, |m, &u| m | 1 << (colours[u] - 1));
    if seen.count_ones() == lambda - 1 {
        let all = (1u64 << lambda) - 1;
        Some((all & !seen).trailing_zeros() + 1)
    } else {
        None
    }
}

fn close_raw(adj: &[Vec<usize>], colours: &mut [u32], lambda: u32) {
    loop {
        let next = (0..colours.len())
            .filter(|&v| colours[v] == 0)
            .find_map(|v| forced_colour(adj, colours, v, lambda).map(|c| (v, c)));
        match next {
            Some((v, c)) => colours[v] = c,
            None => return,
        }
    }
}

fn is_proper_raw(g: &Multigraph, colours: &[u32]) -> bool {
    g.edges()
        .iter()
        .all(|&(u, v)| colours[u] == 0 || colours[v] == 0 || (u != v && colours[u] != colours[v]))
}

fn forces_raw(g: &Multigraph, adj: &[Vec<usize>], colours: &[u32], lambda: u32) -> bool {
    let mut c = colours.to_vec();
    close_raw(adj, &mut c, lambda);
    c.iter().all(|&x| x != 0) && is_proper_raw(g, &c)
}

/// Every vertex that some forcing sequence colours, coloured greedily.
pub fn forcing_closure(g: &Multigraph, f: &PartialAssignment) -> PartialAssignment {
    let mut out = f.clone();
    close_raw(&neighbours(g), &mut out.colours, f.lambda);
    out
}

/// Whether `f` eventually forces a proper λ-colouring of all of `G`.
pub fn forces_colouring(g: &Multigraph, f: &PartialAssignment) -> bool {
    forces_raw(g, &neighbours(g), &f.colours, f.lambda)
}

fn extend_raw(g: &Multigraph, adj: &[Vec<usize>], colours: &mut [u32], lambda: u32) -> bool {
    if !is_proper_raw(g, colours) {
        return false;
    }
    // fill most-constrained vertices first
    fn go(adj: &[Vec<usize>], colours: &mut [u32], lambda: u32) -> bool {
        let mut best: Option<(usize, u64, u32)> = None;
        for v in 0..colours.len() {
            if colours[v] != 0 {
                continue;
            }
            let seen = adj[v]
                .iter()
                .filter(|&&u| colours[u] != 0)
                .fold(0u64, |m, &u| m | 1 << (colours[u] - 1));
            let free = lambda - seen.count_ones();
            if best.is_none_or(|(_, _, f)| free < f) {
                best = Some((v, seen, free));
            }
        }
        let Some((v, seen, _)) = best else {
            return true;
        };
        for c in 1..=lambda {
            if seen >> (c - 1) & 1 == 0 {
                colours[v] = c;
                if go(adj, colours, lambda) {
                    colours[v] = 0;
                    return true;
                }
            }
        }
        colours[v] = 0;
        false
    }
    if adj.iter().enumerate().any(|(v, l)| l.contains(&v)) {
        return false;
    }
    go(adj, colours, lambda)
}

/// Whether some proper λ-colouring of `G` agrees with `f` on its domain.
pub fn is_extendable(g: &Multigraph, f: &PartialAssignment) -> bool {
    let mut c = f.colours.clone();
    extend_raw(g, &neighbours(g), &mut c, f.lambda)
}

pub fn is_colourable(g: &Multigraph, lambda: u32) -> bool {
    is_extendable(g, &PartialAssignment::empty(g.n(), lambda))
}

/// `(x)_k = x(x−1)…(x−k+1)`.
pub fn falling_factorial(x: i64, k: usize) -> Rational {
    (0..k as i64).fold(Rational::one(), |acc, i| acc * int(x - i))
}

/// `Σ_k counts[k] p^k (1 − λp)^{n−k}`, with λ either symbolic or fixed.
fn weigh(counts: &[MultiPoly], n: usize, one_minus: &MultiPoly) -> MultiPoly {
    let p = MultiPoly::var("p");
    counts
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .fold(MultiPoly::zero(), |acc, (k, c)| {
            acc + c.mul(&p.pow(k as u32)).mul(&one_minus.pow((n - k) as u32))
        })
}

fn one_minus_lp_symbolic() -> MultiPoly {
    MultiPoly::one() - MultiPoly::var(LAMBDA) * MultiPoly::var("p")
}

fn one_minus_lp(lambda: u32) -> MultiPoly {
    MultiPoly::one() - MultiPoly::var("p").scale(&int(lambda as i64))
}

/// PC(G^{(C,U)}; p, λ) summed over every domain `C ⊆ D ⊆ V∖U`:
/// `Σ_D P(G[D]; λ) p^{|D|} (1 − λp)^{n−|D|}`.
pub fn pc_labelled(l: &LabelledGraph) -> Result<MultiPoly> {
    pc_labelled_with(l, &Config::default())
}

pub fn pc_labelled_with(l: &LabelledGraph, cfg: &Config) -> Result<MultiPoly> {
    let g = &l.graph;
    let n = g.n();
    let free = l.unlabelled_vertices();
    cfg.enumeration_size("vertex subsets", 2, free.count_ones() as usize)?;
    let domains: Vec<u64> = subsets_of(free).map(|s| s | l.coloured).collect();
    let chromatics = map_collect(cfg.exec, &domains, |&d| {
        (
            d.count_ones() as usize,
            chromatic_poly(&g.induced(d)).rename("q", LAMBDA),
        )
    });
    let mut by_size = vec![MultiPoly::zero(); n + 1];
    for (k, p) in chromatics {
        by_size[k] = by_size[k].add(&p);
    }
    Ok(weigh(&by_size, n, &one_minus_lp_symbolic()))
}

/// PC(G; p, λ) = Σ_{C⊆V} P(G[C]; λ) p^{|C|} (1 − λp)^{n−|C|}.
pub fn pc_poly(g: &Multigraph) -> Result<MultiPoly> {
    pc_labelled(&LabelledGraph::unlabelled(g.clone()))
}

pub fn pc_poly_with(g: &Multigraph, cfg: &Config) -> Result<MultiPoly> {
    pc_labelled_with(&LabelledGraph::unlabelled(g.clone()), cfg)
}

pub fn pc_poly_fixed(g: &Multigraph, lambda: u32) -> Result<MultiPoly> {
    Ok(pc_poly(g)?.substitute_value(LAMBDA, &int(lambda as i64)))
}

pub fn pc_labelled_fixed(l: &LabelledGraph, lambda: u32) -> Result<MultiPoly> {
    Ok(pc_labelled(l)?.substitute_value(LAMBDA, &int(lambda as i64)))
}

fn subsets_of(mask: u64) -> impl Iterator<Item = u64> {
    // standard submask walk, in increasing order
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == mask {
            None
        } else {
            Some((cur | !mask).wrapping_add(1) & mask)
        };
        Some(cur)
    })
}

#[derive(Clone, Copy)]
enum Property {
    Extendable,
    Forces,
}

/// Histogram by `|dom f|` of the labelled partial λ-assignments with the property.
fn assignment_histogram(
    l: &LabelledGraph,
    lambda: u32,
    prop: Property,
    cfg: &Config,
) -> Result<Vec<u64>> {
    check_lambda(lambda)?;
    let g = &l.graph;
    let n = g.n();
    // per-vertex digit ranges: (offset, radix); colour = offset + digit
    let radices: Vec<(u32, u64)> = (0..n)
        .map(|v| {
            if l.coloured >> v & 1 == 1 {
                (1, lambda as u64)
            } else if l.uncoloured >> v & 1 == 1 {
                (0, 1)
            } else {
                (0, lambda as u64 + 1)
            }
        })
        .collect();
    if radices.iter().any(|&(_, r)| r == 0) {
        return Ok(vec![0; n + 1]);
    }
    let total = radices.iter().try_fold(1u64, |acc, &(_, r)| {
        acc.checked_mul(r)
            .filter(|&t| t <= cfg.max_enumeration)
            .ok_or(Error::SizeLimit {
                what: "partial assignments",
                size: acc as u128 * r as u128,
                limit: cfg.max_enumeration as u128,
            })
    })?;
    let adj = neighbours(g);
    Ok(fold_range(
        cfg.exec,
        total,
        || vec![0u64; n + 1],
        |mut acc, mut idx| {
            let mut colours = vec![0u32; n];
            for (v, &(offset, radix)) in radices.iter().enumerate() {
                colours[v] = offset + (idx % radix) as u32;
                idx /= radix;
            }
            let ok = match prop {
                Property::Extendable => extend_raw(g, &adj, &mut colours.clone(), lambda),
                Property::Forces => forces_raw(g, &adj, &colours, lambda),
            };
            if ok {
                acc[colours.iter().filter(|&&c| c != 0).count()] += 1;
            }
            acc
        },
        add_counts,
    ))
}

fn counts_as_polys(counts: &[u64]) -> Vec<MultiPoly> {
    counts
        .iter()
        .map(|&c| MultiPoly::from_int(c as i64))
        .collect()
}

fn joint(l: &LabelledGraph, lambda: u32, prop: Property, cfg: &Config) -> Result<MultiPoly> {
    let counts = assignment_histogram(l, lambda, prop, cfg)?;
    Ok(weigh(
        &counts_as_polys(&counts),
        l.graph.n(),
        &one_minus_lp(lambda),
    ))
}

/// The same sum divided by `Pr(labels hold) = (λp)^{|C|} (1 − λp)^{|U|}`.
fn conditional(l: &LabelledGraph, lambda: u32, prop: Property, cfg: &Config) -> Result<MultiPoly> {
    if lambda == 0 && l.coloured != 0 {
        return Err(Error::InvalidArgument(
            "no C-labelled vertex can be coloured when λ = 0".into(),
        ));
    }
    let counts = assignment_histogram(l, lambda, prop, cfg)?;
    let c = l.coloured.count_ones() as usize;
    let u = l.uncoloured.count_ones() as usize;
    let n = l.graph.n();
    let scale = Rational::one() / num::pow::pow(int(lambda as i64), c);
    let p = MultiPoly::var("p");
    let r = one_minus_lp(lambda);
    Ok(counts
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .fold(MultiPoly::zero(), |acc, (d, &k)| {
            let coeff = int(k as i64) * &scale;
            acc + p
                .pow((d - c) as u32)
                .mul(&r.pow((n - d - u) as u32))
                .scale(&coeff)
        }))
}

pub fn ec_poly_fixed(g: &Multigraph, lambda: u32) -> Result<MultiPoly> {
    ec_labelled(&LabelledGraph::unlabelled(g.clone()), lambda)
}

pub fn ec_poly_fixed_with(g: &Multigraph, lambda: u32, cfg: &Config) -> Result<MultiPoly> {
    joint(
        &LabelledGraph::unlabelled(g.clone()),
        lambda,
        Property::Extendable,
        cfg,
    )
}

pub fn fc_poly_fixed(g: &Multigraph, lambda: u32) -> Result<MultiPoly> {
    fc_labelled(&LabelledGraph::unlabelled(g.clone()), lambda)
}

pub fn fc_poly_fixed_with(g: &Multigraph, lambda: u32, cfg: &Config) -> Result<MultiPoly> {
    joint(
        &LabelledGraph::unlabelled(g.clone()),
        lambda,
        Property::Forces,
        cfg,
    )
}

/// Pr(f is λ-extendable in G and C ⊆ dom f ⊆ V∖U).
pub fn ec_labelled(l: &LabelledGraph, lambda: u32) -> Result<MultiPoly> {
    ec_labelled_with(l, lambda, &Config::default())
}

pub fn ec_labelled_with(l: &LabelledGraph, lambda: u32, cfg: &Config) -> Result<MultiPoly> {
    joint(l, lambda, Property::Extendable, cfg)
}

/// Pr(f forces a λ-colouring of G and C ⊆ dom f ⊆ V∖U).
pub fn fc_labelled(l: &LabelledGraph, lambda: u32) -> Result<MultiPoly> {
    fc_labelled_with(l, lambda, &Config::default())
}

pub fn fc_labelled_with(l: &LabelledGraph, lambda: u32, cfg: &Config) -> Result<MultiPoly> {
    joint(l, lambda, Property::Forces, cfg)
}

/// Pr(f is λ-extendable | C ⊆ dom f ⊆ V∖U).
pub fn ec_labelled_conditional(l: &LabelledGraph, lambda: u32) -> Result<MultiPoly> {
    conditional(l, lambda, Property::Extendable, &Config::default())
}

/// Pr(f forces a λ-colouring | C ⊆ dom f ⊆ V∖U).
pub fn fc_labelled_conditional(l: &LabelledGraph, lambda: u32) -> Result<MultiPoly> {
    conditional(l, lambda, Property::Forces, &Config::default())
}

/// PC by labelling every unlabelled vertex both ways, then the totally
/// labelled base `(1 − λp)^{|U|} p^{n−|U|} P(G − U; λ)`.
pub fn pc_via_reduction(l: &LabelledGraph) -> MultiPoly {
    let free = l.unlabelled_vertices();
    if free == 0 {
        let n = l.graph.n();
        let u = l.uncoloured.count_ones();
        let chromatic = chromatic_poly(&l.graph.remove_vertices(l.uncoloured)).rename("q", LAMBDA);
        return one_minus_lp_symbolic()
            .pow(u)
            .mul(&MultiPoly::var("p").pow(n as u32 - u))
            .mul(&chromatic);
    }
    let v = free.trailing_zeros() as usize;
    let c = LabelledGraph::new(l.graph.clone(), l.coloured | 1 << v, l.uncoloured)
        .expect("disjoint labels");
    let u = LabelledGraph::new(l.graph.clone(), l.coloured, l.uncoloured | 1 << v)
        .expect("disjoint labels");
    pc_via_reduction(&c).add(&pc_via_reduction(&u))
}

/// EC by addition–identification on C-labelled vertices down to cliques.
///
/// Unlabelled vertices are first split (joint probabilities add). Then for
/// non-adjacent `u, v ∈ C`, `EC(G) = EC(G + uv) + p·EC(G/uv)`: the second
/// term covers `f(u) = f(v)`, whose probability `p²` becomes `p` once the
/// two vertices are merged. A totally labelled graph whose C-set is a
/// clique `D` contributes `p^{|D|} (λ)_{|D|} (1 − λp)^{|U|} [G λ-colourable]`.
pub fn ec_clique_reduce(l: &LabelledGraph, lambda: u32) -> Result<MultiPoly> {
    check_lambda(lambda)?;
    Ok(clique_reduce(l, lambda))
}

fn clique_reduce(l: &LabelledGraph, lambda: u32) -> MultiPoly {
    let free = l.unlabelled_vertices();
    if free != 0 {
        let v = free.trailing_zeros() as usize;
        let c = LabelledGraph::new(l.graph.clone(), l.coloured | 1 << v, l.uncoloured)
            .expect("disjoint labels");
        let u = LabelledGraph::new(l.graph.clone(), l.coloured, l.uncoloured | 1 << v)
            .expect("disjoint labels");
        return clique_reduce(&c, lambda).add(&clique_reduce(&u, lambda));
    }
    let g = &l.graph;
    let members: Vec<usize> = (0..g.n()).filter(|&v| l.coloured >> v & 1 == 1).collect();
    for (i, &u) in members.iter().enumerate() {
        for &v in &members[i + 1..] {
            if !g.adjacent(u, v) {
                let added = LabelledGraph::new(g.with_edge(u, v), l.coloured, l.uncoloured)
                    .expect("same labels");
                let map = Multigraph::identify_map(g.n(), u, v);
                let remap = |mask: u64| {
                    (0..g.n())
                        .filter(|&w| mask >> w & 1 == 1)
                        .fold(0u64, |m, w| m | 1 << map[w])
                };
                let merged = LabelledGraph::new(
                    g.identify_vertices(u, v).expect("distinct vertices"),
                    remap(l.coloured),
                    remap(l.uncoloured),
                )
                .expect("labels stay disjoint");
                return clique_reduce(&added, lambda)
                    .add(&clique_reduce(&merged, lambda).mul(&MultiPoly::var("p")));
            }
        }
    }
    let d = members.len();
    if d > lambda as usize || !is_colourable(g, lambda) {
        return MultiPoly::zero();
    }
    MultiPoly::var("p")
        .pow(d as u32)
        .scale(&falling_factorial(lambda as i64, d))
        .mul(&one_minus_lp(lambda).pow(l.uncoloured.count_ones()))
}

/// Value of a polynomial in `p` alone (zero if other variables remain).
pub fn eval_p(poly: &MultiPoly, p: &Rational) -> Rational {
    poly.substitute_value("p", p)
        .as_constant()
        .unwrap_or_else(Rational::zero)
}
