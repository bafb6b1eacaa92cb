//! Undirected multigraph with dense vertex and edge ids.

use crate::error::{GraphError, Result};
use std::collections::HashSet;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    /// The endpoint opposite to `x`. For a loop this is `x` itself.
    pub fn other(&self, x: VertexId) -> VertexId {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

/// A multigraph. Loops appear twice in the incidence list of their vertex.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    edges: Vec<Edge>,
    incidence: Vec<Vec<EdgeId>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            edges: Vec::new(),
            incidence: vec![Vec::new(); n],
        }
    }

    /// Build from index pairs. With `one_based` the pairs use 1..=n.
    pub fn from_edge_list(n: usize, pairs: &[(usize, usize)], one_based: bool) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(a, b) in pairs {
            let (u, v) = if one_based {
                if a == 0 || b == 0 {
                    return Err(GraphError::VertexOutOfRange(a, b));
                }
                (a - 1, b - 1)
            } else {
                (a, b)
            };
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange(a, b));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self) -> VertexId {
        self.incidence.push(Vec::new());
        self.incidence.len() - 1
    }

    /// Appends an edge and returns its id. Panics on out-of-range endpoints.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> EdgeId {
        assert!(u < self.n() && v < self.n(), "edge ({u}, {v}) out of range");
        let id = self.edges.len();
        self.edges.push(Edge { u, v });
        self.incidence[u].push(id);
        self.incidence[v].push(id);
        id
    }

    pub fn n(&self) -> usize {
        self.incidence.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, e: EdgeId) -> Edge {
        self.edges[e]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        let ed = self.edges[e];
        (ed.u, ed.v)
    }

    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.incidence[v]
    }

    /// Degree with loops counted twice.
    pub fn degree(&self, v: VertexId) -> usize {
        self.incidence[v].len()
    }

    /// Neighbours in incidence order, with repetition for parallel edges.
    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.incidence[v].iter().map(move |&e| self.edges[e].other(v))
    }

    pub fn other_end(&self, e: EdgeId, v: VertexId) -> VertexId {
        self.edges[e].other(v)
    }

    /// Lowest-id edge joining `u` and `v`.
    pub fn find_edge(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.incidence[u]
            .iter()
            .copied()
            .filter(|&e| self.edges[e].other(u) == v)
            .min()
    }

    pub fn edges_between(&self, u: VertexId, v: VertexId) -> Vec<EdgeId> {
        let mut out: Vec<EdgeId> = self.incidence[u]
            .iter()
            .copied()
            .filter(|&e| self.edges[e].other(u) == v)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(|e| e.is_loop())
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = HashSet::new();
        for e in &self.edges {
            if e.is_loop() || !seen.insert((e.u.min(e.v), e.u.max(e.v))) {
                return false;
            }
        }
        true
    }

    /// Vertex lists of connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut comp = vec![usize::MAX; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut verts = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < verts.len() {
                let x = verts[i];
                i += 1;
                for y in self.neighbors(x) {
                    if comp[y] == usize::MAX {
                        comp[y] = id;
                        verts.push(y);
                    }
                }
            }
            verts.sort_unstable();
            out.push(verts);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }

    /// Remove a vertex set. Returns the new graph and `map[old] = Some(new)`
    /// for surviving vertices; surviving edges keep their relative order.
    pub fn delete_vertices(&self, del: &[VertexId]) -> Result<(Graph, Vec<Option<VertexId>>)> {
        let mut gone = vec![false; self.n()];
        for &v in del {
            if v >= self.n() {
                return Err(GraphError::NoSuchVertex(v));
            }
            gone[v] = true;
        }
        let mut map = vec![None; self.n()];
        let mut next = 0;
        for v in 0..self.n() {
            if !gone[v] {
                map[v] = Some(next);
                next += 1;
            }
        }
        let mut g = Graph::new(next);
        for e in &self.edges {
            if let (Some(u), Some(v)) = (map[e.u], map[e.v]) {
                g.add_edge(u, v);
            }
        }
        Ok((g, map))
    }

    /// Remove an edge set. Returns the new graph and `map[old_edge] = Some(new_edge)`.
    pub fn delete_edges(&self, del: &[EdgeId]) -> Result<(Graph, Vec<Option<EdgeId>>)> {
        let mut gone = vec![false; self.m()];
        for &e in del {
            if e >= self.m() {
                return Err(GraphError::NoSuchEdge(e));
            }
            gone[e] = true;
        }
        let mut g = Graph::new(self.n());
        let mut map = vec![None; self.m()];
        for (i, e) in self.edges.iter().enumerate() {
            if !gone[i] {
                map[i] = Some(g.add_edge(e.u, e.v));
            }
        }
        Ok((g, map))
    }

    /// Contract a non-loop edge. The higher endpoint merges into the lower one;
    /// parallel edges created by the merge are kept.
    pub fn contract_edge(&self, e: EdgeId) -> Result<Graph> {
        if e >= self.m() {
            return Err(GraphError::NoSuchEdge(e));
        }
        let ed = self.edges[e];
        if ed.is_loop() {
            return Err(GraphError::ContractLoop(e));
        }
        let keep = ed.u.min(ed.v);
        let gone = ed.u.max(ed.v);
        let relabel = |x: VertexId| {
            let x = if x == gone { keep } else { x };
            if x > gone {
                x - 1
            } else {
                x
            }
        };
        let mut g = Graph::new(self.n() - 1);
        for (i, other) in self.edges.iter().enumerate() {
            if i != e {
                g.add_edge(relabel(other.u), relabel(other.v));
            }
        }
        Ok(g)
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n();
        let mut g = self.clone();
        for _ in 0..other.n() {
            g.add_vertex();
        }
        for e in &other.edges {
            g.add_edge(e.u + off, e.v + off);
        }
        g
    }

    /// Relabel vertices with `perm[old] = new` and list edges sorted by endpoints.
    pub fn relabeled(&self, perm: &[VertexId]) -> Graph {
        let mut pairs: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|e| {
                let (a, b) = (perm[e.u], perm[e.v]);
                (a.min(b), a.max(b))
            })
            .collect();
        pairs.sort_unstable();
        let mut g = Graph::new(self.n());
        for (a, b) in pairs {
            g.add_edge(a, b);
        }
        g
    }

    /// Sorted `(min, max)` endpoint pairs, useful for comparing labelled graphs.
    pub fn sorted_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|e| (e.u.min(e.v), e.u.max(e.v)))
            .collect();
        pairs.sort_unstable();
        pairs
    }

    /// Induced subgraph on `verts` (in the given order) plus the vertex map.
    pub fn induced(&self, verts: &[VertexId]) -> (Graph, Vec<Option<VertexId>>) {
        let keep: HashSet<VertexId> = verts.iter().copied().collect();
        let mut map = vec![None; self.n()];
        for (i, &v) in verts.iter().enumerate() {
            map[v] = Some(i);
        }
        let mut g = Graph::new(verts.len());
        for e in &self.edges {
            if keep.contains(&e.u) && keep.contains(&e.v) {
                g.add_edge(map[e.u].unwrap(), map[e.v].unwrap());
            }
        }
        (g, map)
    }
}

/// Ladder `P2 x Pk`: vertices `0..k` on one rail, `k..2k` on the other.
pub fn ladder(k: usize) -> Graph {
    let mut g = Graph::new(2 * k);
    for i in 0..k.saturating_sub(1) {
        g.add_edge(i, i + 1);
        g.add_edge(k + i, k + i + 1);
    }
    for i in 0..k {
        g.add_edge(i, k + i);
    }
    g
}

/// Grid graph with `rows * cols` vertices, vertex `r * cols + c`.
pub fn grid(rows: usize, cols: usize) -> Graph {
    let mut g = Graph::new(rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                g.add_edge(v, v + 1);
            }
            if r + 1 < rows {
                g.add_edge(v, v + cols);
            }
        }
    }
    g
}

pub fn complete(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for i in 0..n {
        for j in i + 1..n {
            g.add_edge(i, j);
        }
    }
    g
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut g = Graph::new(a + b);
    for i in 0..a {
        for j in 0..b {
            g.add_edge(i, a + j);
        }
    }
    g
}

pub fn cycle(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for i in 0..n {
        g.add_edge(i, (i + 1) % n);
    }
    g
}

pub fn path(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for i in 1..n {
        g.add_edge(i - 1, i);
    }
    g
}

/// Prism over an `k`-gon: rails `0..k` and `k..2k`.
pub fn prism(k: usize) -> Graph {
    let mut g = Graph::new(2 * k);
    for i in 0..k {
        g.add_edge(i, (i + 1) % k);
    }
    for i in 0..k {
        g.add_edge(i, k + i);
    }
    for i in 0..k {
        g.add_edge(k + i, k + (i + 1) % k);
    }
    g
}

/// The 3-cube on 3-bit labels.
pub fn cube() -> Graph {
    let mut g = Graph::new(8);
    for v in 0..8usize {
        for bit in [1, 2, 4] {
            if v & bit == 0 {
                g.add_edge(v, v | bit);
            }
        }
    }
    g
}
