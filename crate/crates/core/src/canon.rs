//! Canonical forms for small multigraphs.
//!
//! Individualisation–refinement: vertices are coloured by iterated
//! neighbourhood-multiset refinement (degree, loops and multiplicities
//! included), the first non-singleton cell is split by individualising
//! each of its vertices in turn, and every discrete leaf yields a vertex
//! order. The canonical form is the least leaf encoding. Two vertices of
//! a cell that are twins (swapping them is an automorphism fixing every
//! individualised vertex) lead to isomorphic subtrees, so only the first
//! is explored.

use crate::error::{Error, Result};
use crate::graph::Multigraph;

pub const DEFAULT_CANON_LIMIT: usize = 10;

struct Search<'a> {
    adj: &'a [Vec<u32>],
    n: usize,
    best: Option<Vec<u8>>,
}

/// Refines `colours` to the coarsest stable colouring it refines.
/// Colours are renumbered 0..k in a canonical order.
/// Own colour, loop count, sorted (neighbour colour, multiplicity) pairs.
type Signature = (usize, u32, Vec<(usize, u32)>);

fn refine(adj: &[Vec<u32>], colours: &mut [usize]) {
    let n = adj.len();
    let mut classes = colours
        .iter()
        .collect::<std::collections::BTreeSet<_>>()
        .len();
    loop {
        let mut sigs: Vec<Signature> = (0..n)
            .map(|v| {
                let mut nb: Vec<(usize, u32)> = (0..n)
                    .filter(|&u| u != v && adj[v][u] > 0)
                    .map(|u| (colours[u], adj[v][u]))
                    .collect();
                nb.sort_unstable();
                (colours[v], adj[v][v], nb)
            })
            .collect();
        let mut sorted = sigs.clone();
        sorted.sort();
        sorted.dedup();
        for (v, sig) in sigs.drain(..).enumerate() {
            colours[v] = sorted.binary_search(&sig).unwrap();
        }
        if sorted.len() == classes {
            return;
        }
        classes = sorted.len();
    }
}

fn is_twin(adj: &[Vec<u32>], u: usize, v: usize) -> bool {
    if adj[u][u] != adj[v][v] {
        return false;
    }
    (0..adj.len()).all(|w| w == u || w == v || adj[u][w] == adj[v][w])
}

fn encode(adj: &[Vec<u32>], order: &[usize]) -> Vec<u8> {
    let mut out = Vec::with_capacity(order.len() * (order.len() + 1) / 2 + 2);
    push_varint(&mut out, order.len() as u32);
    for i in 0..order.len() {
        for j in 0..=i {
            push_varint(&mut out, adj[order[i]][order[j]]);
        }
    }
    out
}

fn push_varint(out: &mut Vec<u8>, mut x: u32) {
    loop {
        let byte = (x & 0x7f) as u8;
        x >>= 7;
        if x == 0 {
            out.push(byte);
            return;
        }
        out.push(byte | 0x80);
    }
}

impl Search<'_> {
    fn descend(&mut self, colours: Vec<usize>) {
        let k = colours.iter().max().map_or(0, |&c| c + 1);
        if k == self.n {
            let mut order = vec![0; self.n];
            for (v, &c) in colours.iter().enumerate() {
                order[c] = v;
            }
            let code = encode(self.adj, &order);
            if self.best.as_ref().is_none_or(|b| code < *b) {
                self.best = Some(code);
            }
            return;
        }
        let mut sizes = vec![0usize; k];
        for &c in &colours {
            sizes[c] += 1;
        }
        let target = (0..k).find(|&c| sizes[c] > 1).unwrap();
        let cell: Vec<usize> = (0..self.n).filter(|&v| colours[v] == target).collect();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &cell {
            if explored.iter().any(|&u| is_twin(self.adj, u, v)) {
                continue;
            }
            explored.push(v);
            let mut next: Vec<usize> = colours.iter().map(|&c| 2 * c + 1).collect();
            next[v] = 2 * target;
            refine(self.adj, &mut next);
            self.descend(next);
        }
    }
}

/// Canonical byte string; equal for two graphs iff they are isomorphic.
pub fn canonical_form(g: &Multigraph, limit: usize) -> Result<Vec<u8>> {
    if g.n() > limit {
        return Err(Error::CanonLimit { n: g.n(), limit });
    }
    let adj = g.multiplicity_matrix();
    let mut colours = vec![0; g.n()];
    refine(&adj, &mut colours);
    let mut search = Search {
        adj: &adj,
        n: g.n(),
        best: None,
    };
    if g.n() == 0 {
        return Ok(encode(&adj, &[]));
    }
    search.descend(colours);
    Ok(search.best.unwrap())
}

pub fn is_isomorphic(g: &Multigraph, h: &Multigraph, limit: usize) -> Result<bool> {
    if g.n() != h.n() || g.m() != h.m() {
        return Ok(false);
    }
    let mut dg: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let mut dh: Vec<usize> = (0..h.n()).map(|v| h.degree(v)).collect();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return Ok(false);
    }
    Ok(canonical_form(g, limit)? == canonical_form(h, limit)?)
}
