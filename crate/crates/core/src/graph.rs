//! Multigraphs with loops and parallel edges, and the minor operations the
//! recursions are built on.
//!
//! Vertices are `0..n`. Edges are unordered pairs stored as `(min, max)`;
//! an edge is identified by its position in the edge list, so parallel
//! edges stay distinguishable. Operations that remove a vertex renumber the
//! remaining ones contiguously, keeping relative order.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Multigraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

/// The subset statistics ν, κ, k, ρ, ρ* of an edge subset X.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeSubsetStats {
    pub size: usize,
    /// Vertices met by X.
    pub nu: usize,
    /// Components of (V(X), X).
    pub kappa: usize,
    /// Components of (V, X).
    pub kcount: usize,
    pub rank: usize,
    pub dualrank: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    Loop,
    Coloop,
    Ordinary,
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
    pub(crate) sets: usize,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            sets: n,
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        self.sets -= 1;
        true
    }
}

fn ordered(u: usize, v: usize) -> (usize, usize) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Multigraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let edges: Vec<(usize, usize)> = edges.into_iter().map(|(u, v)| ordered(u, v)).collect();
        for &(_, v) in &edges {
            if v >= n {
                return Err(Error::InvalidVertex { vertex: v, n });
            }
        }
        Ok(Multigraph { n, edges })
    }

    /// Graph with `n` vertices and no edges.
    pub fn null(n: usize) -> Self {
        Multigraph {
            n,
            edges: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> Result<(usize, usize)> {
        self.edges.get(e).copied().ok_or(Error::InvalidEdge {
            index: e,
            edges: self.edges.len(),
        })
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::InvalidVertex {
                vertex: v,
                n: self.n,
            })
        }
    }

    /// Degree, with a loop counted twice.
    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| (a == v) as usize + (b == v) as usize)
            .sum()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Symmetric matrix of edge multiplicities; the diagonal counts loops.
    pub fn multiplicity_matrix(&self) -> Vec<Vec<u32>> {
        let mut a = vec![vec![0u32; self.n]; self.n];
        for &(u, v) in &self.edges {
            a[u][v] += 1;
            if u != v {
                a[v][u] += 1;
            }
        }
        a
    }

    /// Bitmask of neighbours (excluding the vertex itself). Requires n <= 64.
    pub fn neighbour_masks(&self) -> Vec<u64> {
        let mut out = vec![0u64; self.n];
        for &(u, v) in &self.edges {
            if u != v {
                out[u] |= 1 << v;
                out[v] |= 1 << u;
            }
        }
        out
    }

    pub fn has_loop(&self) -> bool {
        self.edges.iter().any(|&(u, v)| u == v)
    }

    pub fn is_simple(&self) -> bool {
        if self.has_loop() {
            return false;
        }
        let set: BTreeSet<_> = self.edges.iter().collect();
        set.len() == self.edges.len()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        let key = ordered(u, v);
        self.edges.contains(&key)
    }

    /// Component label per vertex (labels are the smallest vertex of each component).
    pub fn component_labels(&self) -> Vec<usize> {
        let mut uf = UnionFind::new(self.n);
        for &(u, v) in &self.edges {
            uf.union(u, v);
        }
        (0..self.n).map(|v| uf.find(v)).collect()
    }

    /// k(G): number of components, isolated vertices included.
    pub fn components(&self) -> usize {
        let mut uf = UnionFind::new(self.n);
        for &(u, v) in &self.edges {
            uf.union(u, v);
        }
        uf.sets
    }

    pub fn is_connected(&self) -> bool {
        self.components() <= 1
    }

    /// ρ(G) = n − k(G).
    pub fn rank(&self) -> usize {
        self.n - self.components()
    }

    fn check_subset(&self, x: u64) {
        assert!(
            self.edges.len() >= 64 || x >> self.edges.len() == 0,
            "edge subset mask out of range"
        );
    }

    /// Rank ρ(X) of an edge subset given as a bitmask over edge indices.
    pub fn subset_rank(&self, x: u64) -> usize {
        self.check_subset(x);
        let mut uf = UnionFind::new(self.n);
        let mut r = 0;
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if x >> i & 1 == 1 && uf.union(u, v) {
                r += 1;
            }
        }
        r
    }

    pub fn full_mask(&self) -> u64 {
        assert!(self.edges.len() <= 63, "edge subsets limited to 63 edges");
        (1u64 << self.edges.len()) - 1
    }

    pub fn subset_stats(&self, x: u64) -> EdgeSubsetStats {
        self.check_subset(x);
        let mut uf = UnionFind::new(self.n);
        let mut met = vec![false; self.n];
        let mut size = 0;
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if x >> i & 1 == 1 {
                size += 1;
                met[u] = true;
                met[v] = true;
                uf.union(u, v);
            }
        }
        let nu = met.iter().filter(|&&b| b).count();
        let kcount = uf.sets;
        // isolated vertices are exactly the unmet ones, each its own component
        let kappa = kcount - (self.n - nu);
        let rank = nu - kappa;
        let full = self.full_mask();
        let dualrank = size + self.subset_rank(full & !x) - self.subset_rank(full);
        EdgeSubsetStats {
            size,
            nu,
            kappa,
            kcount,
            rank,
            dualrank,
        }
    }

    pub fn classify_edge(&self, e: usize) -> Result<EdgeKind> {
        let (u, v) = self.edge(e)?;
        if u == v {
            return Ok(EdgeKind::Loop);
        }
        // coloop iff u and v are disconnected once e is removed
        let mut uf = UnionFind::new(self.n);
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if i != e {
                uf.union(a, b);
            }
        }
        if uf.find(u) == uf.find(v) {
            Ok(EdgeKind::Ordinary)
        } else {
            Ok(EdgeKind::Coloop)
        }
    }

    /// Indices of all coloops (bridges), via one DFS lowpoint pass.
    pub fn coloops(&self) -> Vec<usize> {
        let adj = self.incidence_lists();
        let mut disc = vec![usize::MAX; self.n];
        let mut low = vec![0usize; self.n];
        let mut bridges = Vec::new();
        let mut time = 0;
        for root in 0..self.n {
            if disc[root] != usize::MAX {
                continue;
            }
            // iterative DFS: (vertex, parent edge, next incidence index)
            let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
            disc[root] = time;
            low[root] = time;
            time += 1;
            while let Some(&mut (v, pe, ref mut idx)) = stack.last_mut() {
                if *idx < adj[v].len() {
                    let (w, e) = adj[v][*idx];
                    *idx += 1;
                    if e == pe || w == v {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        disc[w] = time;
                        low[w] = time;
                        time += 1;
                        stack.push((w, e, 0));
                    } else {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(p, _, _)) = stack.last() {
                        low[p] = low[p].min(low[v]);
                        if low[v] > disc[p] {
                            bridges.push(pe);
                        }
                    }
                }
            }
        }
        bridges.sort_unstable();
        bridges
    }

    /// Per-vertex list of (neighbour, edge index); loops appear once.
    pub fn incidence_lists(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            adj[u].push((v, i));
            if u != v {
                adj[v].push((u, i));
            }
        }
        adj
    }

    pub fn delete_edge(&self, e: usize) -> Result<Multigraph> {
        self.edge(e)?;
        let mut edges = self.edges.clone();
        edges.remove(e);
        Ok(Multigraph { n: self.n, edges })
    }

    /// Deletes every edge whose bit is set in `mask`.
    pub fn delete_edges(&self, mask: u64) -> Multigraph {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| *i >= 64 || mask >> i & 1 == 0)
            .map(|(_, &e)| e)
            .collect();
        Multigraph { n: self.n, edges }
    }

    /// Contracts edge `e`; contracting a loop deletes it.
    pub fn contract_edge(&self, e: usize) -> Result<Multigraph> {
        let (u, v) = self.edge(e)?;
        let g = self.delete_edge(e)?;
        if u == v {
            return Ok(g);
        }
        g.identify_vertices(u, v)
    }

    /// `G + uv`; requires u ≠ v and uv ∉ E.
    pub fn add_edge(&self, u: usize, v: usize) -> Result<Multigraph> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::InvalidArgument("add_edge requires u != v".into()));
        }
        if self.adjacent(u, v) {
            return Err(Error::InvalidArgument(format!("{u}{v} is already an edge")));
        }
        Ok(self.with_edge(u, v))
    }

    /// Appends an edge with no admissibility checks beyond bounds.
    pub fn with_edge(&self, u: usize, v: usize) -> Multigraph {
        assert!(u < self.n && v < self.n, "vertex out of range");
        let mut g = self.clone();
        g.edges.push(ordered(u, v));
        g
    }

    /// New index of every old vertex after identifying `u` and `v`.
    pub fn identify_map(n: usize, u: usize, v: usize) -> Vec<usize> {
        let (keep, gone) = ordered(u, v);
        (0..n)
            .map(|w| {
                if w == gone {
                    keep
                } else if w > gone {
                    w - 1
                } else {
                    w
                }
            })
            .collect()
    }

    /// `G/uv`: merges u and v into the smaller index, keeping every edge.
    pub fn identify_vertices(&self, u: usize, v: usize) -> Result<Multigraph> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::InvalidArgument("identify requires u != v".into()));
        }
        let map = Self::identify_map(self.n, u, v);
        Ok(self.relabel(&map, self.n - 1))
    }

    fn relabel(&self, map: &[usize], n: usize) -> Multigraph {
        Multigraph {
            n,
            edges: self
                .edges
                .iter()
                .map(|&(a, b)| ordered(map[a], map[b]))
                .collect(),
        }
    }

    /// Applies a vertex permutation: vertex `v` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Multigraph {
        assert_eq!(perm.len(), self.n);
        self.relabel(perm, self.n)
    }

    pub fn disjoint_union(&self, other: &Multigraph) -> Multigraph {
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + self.n, v + self.n)));
        Multigraph {
            n: self.n + other.n,
            edges,
        }
    }

    /// Subgraph induced by the vertices whose bit is set, renumbered in order.
    pub fn induced(&self, keep: u64) -> Multigraph {
        let mut map = vec![usize::MAX; self.n];
        let mut next = 0;
        for (v, slot) in map.iter_mut().enumerate() {
            if keep >> v & 1 == 1 {
                *slot = next;
                next += 1;
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| keep >> u & 1 == 1 && keep >> v & 1 == 1)
            .map(|&(u, v)| (map[u], map[v]))
            .collect();
        Multigraph { n: next, edges }
    }

    /// `G − U` for a vertex bitmask U.
    pub fn remove_vertices(&self, remove: u64) -> Multigraph {
        let all = if self.n >= 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        };
        self.induced(all & !remove)
    }

    /// Removes vertices of degree zero.
    pub fn strip_isolated(&self) -> Multigraph {
        let mut keep = 0u64;
        for &(u, v) in &self.edges {
            keep |= 1 << u | 1 << v;
        }
        self.induced(keep)
    }

    pub fn is_bipartite(&self) -> bool {
        let adj = self.incidence_lists();
        let mut side = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &(w, _) in &adj[v] {
                    if side[w] == u8::MAX {
                        side[w] = 1 - side[v];
                        stack.push(w);
                    } else if side[w] == side[v] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Block decomposition: maximal 2-connected pieces, bridges and loops.
    /// Each block is returned on its own vertex set (incident vertices only).
    pub fn blocks(&self) -> Vec<Multigraph> {
        let adj = self.incidence_lists();
        let mut disc = vec![usize::MAX; self.n];
        let mut low = vec![0usize; self.n];
        let mut time = 0;
        let mut edge_stack: Vec<usize> = Vec::new();
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut seen_edge = vec![false; self.edges.len()];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if u == v {
                groups.push(vec![i]);
                seen_edge[i] = true;
            }
        }
        for root in 0..self.n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = time;
            low[root] = time;
            time += 1;
            let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
            while let Some(&mut (v, pe, ref mut idx)) = stack.last_mut() {
                if *idx < adj[v].len() {
                    let (w, e) = adj[v][*idx];
                    *idx += 1;
                    if e == pe || seen_edge[e] && w == v {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        edge_stack.push(e);
                        seen_edge[e] = true;
                        disc[w] = time;
                        low[w] = time;
                        time += 1;
                        stack.push((w, e, 0));
                    } else if !seen_edge[e] {
                        // back edge (or parallel edge to the parent)
                        edge_stack.push(e);
                        seen_edge[e] = true;
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(p, _, _)) = stack.last() {
                        low[p] = low[p].min(low[v]);
                        if low[v] >= disc[p] {
                            let mut group = Vec::new();
                            while let Some(e) = edge_stack.pop() {
                                group.push(e);
                                if e == pe {
                                    break;
                                }
                            }
                            groups.push(group);
                        }
                    }
                }
            }
        }
        groups
            .into_iter()
            .map(|mut g| {
                g.sort_unstable();
                let sub = Multigraph {
                    n: self.n,
                    edges: g.iter().map(|&i| self.edges[i]).collect(),
                };
                sub.strip_isolated()
            })
            .collect()
    }

    /// Line graph of a simple loop-free graph.
    pub fn line_graph(&self) -> Result<Multigraph> {
        if !self.is_simple() {
            return Err(Error::NotSimple);
        }
        let m = self.edges.len();
        let mut edges = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                let (a, b) = self.edges[i];
                let (c, d) = self.edges[j];
                if a == c || a == d || b == c || b == d {
                    edges.push((i, j));
                }
            }
        }
        Ok(Multigraph { n: m, edges })
    }

    /// Edges sorted, for comparisons that ignore edge order.
    pub fn sorted_edges(&self) -> Vec<(usize, usize)> {
        let mut e = self.edges.clone();
        e.sort_unstable();
        e
    }

    pub fn canonical_form(&self) -> Result<Vec<u8>> {
        crate::canon::canonical_form(self, crate::canon::DEFAULT_CANON_LIMIT)
    }

    pub fn is_isomorphic(&self, other: &Multigraph) -> Result<bool> {
        crate::canon::is_isomorphic(self, other, crate::canon::DEFAULT_CANON_LIMIT)
    }
}

impl fmt::Display for Multigraph {
    /// Edge-list text format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.n, self.edges.len())?;
        for &(u, v) in &self.edges {
            writeln!(f, "{u} {v}")?;
        }
        Ok(())
    }
}

/// A graph with must-colour (C) and must-stay-uncoloured (U) vertex labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LabelledGraph {
    pub graph: Multigraph,
    /// Bitmask of vertices labelled C.
    pub coloured: u64,
    /// Bitmask of vertices labelled U.
    pub uncoloured: u64,
}

impl LabelledGraph {
    pub fn new(graph: Multigraph, coloured: u64, uncoloured: u64) -> Result<Self> {
        if coloured & uncoloured != 0 {
            return Err(Error::LabelOverlap);
        }
        let n = graph.n();
        if n < 64 && (coloured | uncoloured) >> n != 0 {
            return Err(Error::InvalidVertex {
                vertex: 63 - (coloured | uncoloured).leading_zeros() as usize,
                n,
            });
        }
        Ok(LabelledGraph {
            graph,
            coloured,
            uncoloured,
        })
    }

    pub fn unlabelled(graph: Multigraph) -> Self {
        LabelledGraph {
            graph,
            coloured: 0,
            uncoloured: 0,
        }
    }

    pub fn from_sets(graph: Multigraph, c: &[usize], u: &[usize]) -> Result<Self> {
        let mask = |s: &[usize]| s.iter().fold(0u64, |m, &v| m | 1 << v);
        Self::new(graph, mask(c), mask(u))
    }

    pub fn all_vertices(&self) -> u64 {
        let n = self.graph.n();
        if n >= 64 {
            u64::MAX
        } else {
            (1u64 << n) - 1
        }
    }

    pub fn unlabelled_vertices(&self) -> u64 {
        self.all_vertices() & !(self.coloured | self.uncoloured)
    }

    pub fn is_total(&self) -> bool {
        self.unlabelled_vertices() == 0
    }

    pub fn with_coloured(&self, v: usize) -> Result<Self> {
        Self::new(self.graph.clone(), self.coloured | 1 << v, self.uncoloured)
    }

    pub fn with_uncoloured(&self, v: usize) -> Result<Self> {
        Self::new(self.graph.clone(), self.coloured, self.uncoloured | 1 << v)
    }
}

/// Named graph families: `K_n`, `C_n`, `P_n`, `K_{a,b}`, `null_n`, `gray1`, `gray2`.
pub mod families {
    use super::*;

    pub fn complete(n: usize) -> Multigraph {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((i, j));
            }
        }
        Multigraph { n, edges }
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Result<Multigraph> {
        if n < 3 {
            return Err(Error::InvalidArgument("C_n requires n >= 3".into()));
        }
        Multigraph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// Path on `n` vertices.
    pub fn path(n: usize) -> Multigraph {
        Multigraph {
            n,
            edges: (1..n).map(|i| (i - 1, i)).collect(),
        }
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Multigraph {
        let mut edges = Vec::new();
        for i in 0..a {
            for j in 0..b {
                edges.push((i, a + j));
            }
        }
        Multigraph { n: a + b, edges }
    }

    pub fn null(n: usize) -> Multigraph {
        Multigraph::null(n)
    }

    /// One vertex carrying one loop.
    pub fn single_loop() -> Multigraph {
        Multigraph {
            n: 1,
            edges: vec![(0, 0)],
        }
    }

    // vertices a..f = 0..5
    const A: usize = 0;
    const B: usize = 1;
    const C: usize = 2;
    const D: usize = 3;
    const E: usize = 4;
    const F: usize = 5;

    /// First Gray graph: double edge ab.
    pub fn gray1() -> Multigraph {
        Multigraph {
            n: 6,
            edges: vec![
                (A, B),
                (A, B),
                (A, C),
                (B, C),
                (B, D),
                (C, D),
                (B, E),
                (D, E),
                (C, F),
                (E, F),
            ],
        }
    }

    /// Second Gray graph: double edge cd.
    pub fn gray2() -> Multigraph {
        Multigraph {
            n: 6,
            edges: vec![
                (A, B),
                (A, C),
                (B, C),
                (C, D),
                (C, D),
                (D, F),
                (B, E),
                (D, E),
                (C, F),
                (E, F),
            ],
        }
    }

    /// Parses names such as `K4`, `K_4`, `C_5`, `P3`, `K_{1,3}`, `K1,3`,
    /// `null_3`, `gray1`.
    pub fn construct(name: &str) -> Result<Multigraph> {
        let cleaned: String = name
            .chars()
            .filter(|c| !matches!(c, '_' | '{' | '}' | ' '))
            .collect();
        let unknown = || Error::UnknownFamily(name.to_string());
        let num = |s: &str| s.parse::<usize>().map_err(|_| unknown());
        let lower = cleaned.to_ascii_lowercase();
        if lower == "gray1" {
            return Ok(gray1());
        }
        if lower == "gray2" {
            return Ok(gray2());
        }
        if lower == "loop" {
            return Ok(single_loop());
        }
        if let Some(rest) = lower.strip_prefix("null") {
            return Ok(null(num(rest)?));
        }
        let (head, rest) = cleaned.split_at(1.min(cleaned.len()));
        match head {
            "K" => match rest.split_once(',') {
                Some((a, b)) => Ok(complete_bipartite(num(a)?, num(b)?)),
                None => Ok(complete(num(rest)?)),
            },
            "C" => cycle(num(rest)?),
            "P" => Ok(path(num(rest)?)),
            "N" => Ok(null(num(rest)?)),
            _ => Err(unknown()),
        }
    }
}
