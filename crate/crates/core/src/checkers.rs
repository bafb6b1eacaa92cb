//! Structural checks: degree, bipartiteness, vertex connectivity, small edge
//! cuts and the combined test for cubic 3-connected bipartite planar graphs.

use crate::embedding::{face_size_histogram, Embedding, Face};
use crate::error::{GraphError, Result};
use crate::graph::{ladder, EdgeId, Graph, VertexId};
use crate::planarity::{is_planar, KuratowskiWitness, Planarity};
use std::collections::VecDeque;

/// Every vertex has degree 3, loops counting twice.
pub fn is_cubic(g: &Graph) -> bool {
    (0..g.n()).all(|v| g.degree(v) == 3)
}

/// Two-colouring, `side[v]` in {0, 1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    pub side: Vec<u8>,
}

impl Bipartition {
    pub fn part_sizes(&self) -> (usize, usize) {
        let ones = self.side.iter().filter(|&&s| s == 1).count();
        (self.side.len() - ones, ones)
    }
}

/// An odd closed walk, as vertices `v0 .. vk` with `vk == v0` and `k` odd.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddCycle {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

pub fn bipartition(g: &Graph) -> std::result::Result<Bipartition, OddCycle> {
    let n = g.n();
    let mut side = vec![u8::MAX; n];
    let mut parent: Vec<Option<(VertexId, EdgeId)>> = vec![None; n];
    let mut depth = vec![0usize; n];
    for s in 0..n {
        if side[s] != u8::MAX {
            continue;
        }
        side[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            for &e in g.incident(x) {
                let y = g.other_end(e, x);
                if side[y] == u8::MAX {
                    side[y] = 1 - side[x];
                    parent[y] = Some((x, e));
                    depth[y] = depth[x] + 1;
                    q.push_back(y);
                } else if side[y] == side[x] {
                    return Err(odd_walk(&parent, &depth, x, y, e));
                }
            }
        }
    }
    Ok(Bipartition { side })
}

fn odd_walk(
    parent: &[Option<(VertexId, EdgeId)>],
    depth: &[usize],
    x: VertexId,
    y: VertexId,
    e: EdgeId,
) -> OddCycle {
    // climb both tree paths to their meeting point
    let (mut a, mut b) = (x, y);
    let (mut pa, mut pb) = (vec![(a, None)], vec![(b, None)]);
    while a != b {
        if depth[a] >= depth[b] {
            let (p, pe) = parent[a].unwrap();
            pa.last_mut().unwrap().1 = Some(pe);
            a = p;
            pa.push((a, None));
        } else {
            let (p, pe) = parent[b].unwrap();
            pb.last_mut().unwrap().1 = Some(pe);
            b = p;
            pb.push((b, None));
        }
    }
    // walk: lca .. x (reverse of pa), edge e, y .. lca (pb)
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for i in (0..pa.len()).rev() {
        vertices.push(pa[i].0);
        if i > 0 {
            edges.push(pa[i - 1].1.unwrap());
        }
    }
    edges.push(e);
    for (v, pe) in &pb {
        vertices.push(*v);
        if let Some(pe) = pe {
            edges.push(*pe);
        }
    }
    OddCycle { vertices, edges }
}

/// Why a graph fails a connectivity threshold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConnectivityViolation {
    TooFewVertices,
    Separator(Vec<VertexId>),
}

fn connected_without(g: &Graph, removed: &[bool]) -> bool {
    let Some(s) = (0..g.n()).find(|&v| !removed[v]) else {
        return true;
    };
    let mut seen = removed.to_vec();
    seen[s] = true;
    let mut stack = vec![s];
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for y in g.neighbors(x) {
            if !seen[y] {
                seen[y] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    count == removed.iter().filter(|&&r| !r).count()
}

/// True when `g` has more than `k` vertices and no set of fewer than `k`
/// vertices disconnects it. Exhaustive over separator candidates.
pub fn vertex_connectivity_at_least(g: &Graph, k: usize) -> std::result::Result<(), ConnectivityViolation> {
    if g.n() <= k {
        return Err(ConnectivityViolation::TooFewVertices);
    }
    let n = g.n();
    let mut removed = vec![false; n];
    for size in 0..k {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            for &i in &idx {
                removed[i] = true;
            }
            let ok = connected_without(g, &removed);
            for &i in &idx {
                removed[i] = false;
            }
            if !ok {
                return Err(ConnectivityViolation::Separator(idx));
            }
            if !next_combination(&mut idx, n) {
                break;
            }
        }
    }
    Ok(())
}

pub fn is_3_connected(g: &Graph) -> bool {
    vertex_connectivity_at_least(g, 3).is_ok()
}

/// Advance a sorted k-subset of `0..n` in lexicographic order.
pub(crate) fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Faces of an embedding with their size histogram.
pub fn faces(emb: &Embedding) -> (Vec<Face>, Vec<usize>) {
    let f = emb.faces();
    let h = face_size_histogram(&f);
    (f, h)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutClass {
    /// Not a 4-cut classification (3-cuts, vertex separators).
    None,
    /// One side is a 4-face.
    Plain,
    /// Neither side is a 4-face, but one side is an R1 or R2 ladder.
    Essential,
    /// Neither side is a 4-face, R1 or R2.
    Major,
}

impl CutClass {
    pub fn is_essential(self) -> bool {
        matches!(self, CutClass::Essential | CutClass::Major)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutReport {
    pub edges: Vec<EdgeId>,
    pub side_a: Vec<VertexId>,
    pub side_b: Vec<VertexId>,
    pub classification: CutClass,
}

/// Component labels after deleting `cut`; `None` unless exactly two components.
fn two_sides(g: &Graph, cut: &[EdgeId]) -> Option<(Vec<VertexId>, Vec<VertexId>)> {
    let n = g.n();
    let mut label = vec![u8::MAX; n];
    let mut cur = 0u8;
    for s in 0..n {
        if label[s] != u8::MAX {
            continue;
        }
        if cur == 2 {
            return None;
        }
        label[s] = cur;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &e in g.incident(x) {
                if cut.contains(&e) {
                    continue;
                }
                let y = g.other_end(e, x);
                if label[y] == u8::MAX {
                    label[y] = cur;
                    stack.push(y);
                }
            }
        }
        cur += 1;
    }
    if cur != 2 {
        return None;
    }
    let a = (0..n).filter(|&v| label[v] == 0).collect();
    let b = (0..n).filter(|&v| label[v] == 1).collect();
    Some((a, b))
}

/// Every edge of the cut must run between the sides.
fn cut_is_crossing(g: &Graph, cut: &[EdgeId], side_a: &[VertexId]) -> bool {
    cut.iter().all(|&e| {
        let ed = g.edge(e);
        side_a.binary_search(&ed.u).is_ok() != side_a.binary_search(&ed.v).is_ok()
    })
}

fn cuts_of_size(g: &Graph, k: usize, min_side: usize) -> Vec<CutReport> {
    let m = g.m();
    let mut out = Vec::new();
    if m < k || k == 0 {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if let Some((a, b)) = two_sides(g, &idx) {
            if a.len() >= min_side && b.len() >= min_side && cut_is_crossing(g, &idx, &a) {
                out.push(CutReport {
                    edges: idx.clone(),
                    side_a: a,
                    side_b: b,
                    classification: CutClass::None,
                });
            }
        }
        if !next_combination(&mut idx, m) {
            break;
        }
    }
    out
}

/// First 3-edge cut (in lexicographic edge order) with at least 2 vertices per side.
pub fn find_edge_3cut(g: &Graph) -> Option<CutReport> {
    let m = g.m();
    if m < 3 {
        return None;
    }
    let mut idx: Vec<usize> = (0..3).collect();
    loop {
        if let Some((a, b)) = two_sides(g, &idx) {
            if a.len() >= 2 && b.len() >= 2 && cut_is_crossing(g, &idx, &a) {
                return Some(CutReport {
                    edges: idx,
                    side_a: a,
                    side_b: b,
                    classification: CutClass::None,
                });
            }
        }
        if !next_combination(&mut idx, m) {
            return None;
        }
    }
}

/// All 3-edge cuts with at least 2 vertices per side.
pub fn edge_3cuts(g: &Graph) -> Vec<CutReport> {
    cuts_of_size(g, 3, 2)
}

fn is_four_face(g: &Graph, side: &[VertexId], faces: &[Face]) -> bool {
    side.len() == 4
        && faces.iter().any(|f| {
            if f.len() != 4 {
                return false;
            }
            let mut vs = f.vertices(g);
            vs.sort_unstable();
            vs == side
        })
}

fn is_ladder_side(g: &Graph, side: &[VertexId], rungs: usize) -> bool {
    if side.len() != 2 * rungs {
        return false;
    }
    let (h, _) = g.induced(side);
    let l = ladder(rungs);
    h.m() == l.m() && isomorphic_small(&h, &l)
}

/// Backtracking isomorphism test for small simple graphs.
pub(crate) fn isomorphic_small(a: &Graph, b: &Graph) -> bool {
    if a.n() != b.n() || a.m() != b.m() {
        return false;
    }
    let n = a.n();
    let adj = |g: &Graph| {
        let mut m = vec![0u8; n * n];
        for e in g.edges() {
            m[e.u * n + e.v] += 1;
            if e.u != e.v {
                m[e.v * n + e.u] += 1;
            }
        }
        m
    };
    let (ma, mb) = (adj(a), adj(b));
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(i: usize, n: usize, ma: &[u8], mb: &[u8], a: &Graph, b: &Graph, map: &mut [usize], used: &mut [bool]) -> bool {
        if i == n {
            return true;
        }
        for t in 0..n {
            if used[t] || a.degree(i) != b.degree(t) {
                continue;
            }
            if (0..i).all(|j| ma[i * n + j] == mb[t * n + map[j]]) && ma[i * n + i] == mb[t * n + t] {
                map[i] = t;
                used[t] = true;
                if go(i + 1, n, ma, mb, a, b, map, used) {
                    return true;
                }
                used[t] = false;
            }
        }
        false
    }
    go(0, n, &ma, &mb, a, b, &mut map, &mut used)
}

/// All 4-edge cuts with at least 2 vertices per side, classified.
pub fn classify_4cuts(g: &Graph, emb: &Embedding) -> Vec<CutReport> {
    let faces = emb.faces();
    let mut cuts = cuts_of_size(g, 4, 2);
    for c in &mut cuts {
        let plain = is_four_face(g, &c.side_a, &faces) || is_four_face(g, &c.side_b, &faces);
        c.classification = if plain {
            CutClass::Plain
        } else {
            let ladder_side = |s: &[VertexId]| is_ladder_side(g, s, 3) || is_ladder_side(g, s, 4);
            if ladder_side(&c.side_a) || ladder_side(&c.side_b) {
                CutClass::Essential
            } else {
                CutClass::Major
            }
        };
    }
    cuts
}

/// Removing fewer than 4 edges never splits `g` into two parts that both contain a cycle.
pub fn cyclically_4_edge_connected(g: &Graph) -> bool {
    if !g.is_connected() {
        return false;
    }
    let has_cycle = |side: &[VertexId]| {
        let (h, _) = g.induced(side);
        h.m() >= h.n()
    };
    for k in 1..=3 {
        let m = g.m();
        if m < k {
            break;
        }
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            if let Some((a, b)) = two_sides(g, &idx) {
                if has_cycle(&a) && has_cycle(&b) {
                    return false;
                }
            }
            if !next_combination(&mut idx, m) {
                break;
            }
        }
    }
    true
}

/// Outcome of the combined cubic / bipartite / 3-connected / planar check.
#[derive(Debug, Clone)]
pub struct C3cbpReport {
    pub cubic: bool,
    pub bipartite: std::result::Result<Bipartition, OddCycle>,
    pub connectivity3: std::result::Result<(), ConnectivityViolation>,
    pub planarity: Option<std::result::Result<Embedding, KuratowskiWitness>>,
}

impl C3cbpReport {
    pub fn is_c3cbp(&self) -> bool {
        self.cubic
            && self.bipartite.is_ok()
            && self.connectivity3.is_ok()
            && matches!(self.planarity, Some(Ok(_)))
    }

    pub fn embedding(&self) -> Option<&Embedding> {
        match &self.planarity {
            Some(Ok(e)) => Some(e),
            _ => None,
        }
    }
}

pub fn check_c3cbp(g: &Graph) -> C3cbpReport {
    let planarity = match is_planar(g) {
        Ok(Planarity::Planar(e)) => Some(Ok(e)),
        Ok(Planarity::NonPlanar(w)) => Some(Err(w)),
        Err(_) => None,
    };
    C3cbpReport {
        cubic: is_cubic(g),
        bipartite: bipartition(g),
        connectivity3: vertex_connectivity_at_least(g, 3),
        planarity,
    }
}

/// Fast yes/no variant: returns the embedding when `g` is a C3CBP.
pub fn c3cbp_embedding(g: &Graph) -> Option<Embedding> {
    if !is_cubic(g) || !g.is_simple() || bipartition(g).is_err() || !is_3_connected(g) {
        return None;
    }
    crate::planarity::planar_embedding(g)
}

pub fn require_connected(g: &Graph) -> Result<()> {
    if g.is_connected() {
        Ok(())
    } else {
        Err(GraphError::Disconnected)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::*;
    use crate::planarity::planar_embedding;

    #[test]
    fn cube_checks() {
        let g = cube();
        assert!(is_cubic(&g));
        assert_eq!(bipartition(&g).unwrap().part_sizes(), (4, 4));
        assert!(vertex_connectivity_at_least(&g, 3).is_ok());
        match vertex_connectivity_at_least(&g, 4) {
            Err(ConnectivityViolation::Separator(s)) => assert_eq!(s.len(), 3),
            other => panic!("{other:?}"),
        }
        assert!(find_edge_3cut(&g).is_none());
        assert!(cyclically_4_edge_connected(&g));
        assert!(check_c3cbp(&g).is_c3cbp());
    }

    #[test]
    fn odd_cycle_witness() {
        let g = prism(5);
        let w = bipartition(&g).unwrap_err();
        assert_eq!(w.vertices.first(), w.vertices.last());
        assert_eq!(w.edges.len() % 2, 1);
        assert_eq!(w.edges.len() + 1, w.vertices.len());
        for (i, &e) in w.edges.iter().enumerate() {
            let (a, b) = (w.vertices[i], w.vertices[i + 1]);
            assert_eq!(g.other_end(e, a), b);
        }
        let mut l = Graph::new(1);
        l.add_edge(0, 0);
        assert_eq!(bipartition(&l).unwrap_err().edges, vec![0]);
    }

    #[test]
    fn path_has_cut_vertex() {
        assert_eq!(
            vertex_connectivity_at_least(&path(3), 2),
            Err(ConnectivityViolation::Separator(vec![1]))
        );
        assert_eq!(
            vertex_connectivity_at_least(&complete(4), 4),
            Err(ConnectivityViolation::TooFewVertices)
        );
    }

    #[test]
    fn hex_prism_four_cuts_are_plain_or_not() {
        let g = prism(6);
        let emb = planar_embedding(&g).unwrap();
        let cuts = classify_4cuts(&g, &emb);
        assert!(!cuts.is_empty());
        // cutting across both rails twice gives ladders of every length
        assert!(cuts.iter().any(|c| c.classification == CutClass::Plain));
        assert!(cuts.iter().any(|c| c.classification == CutClass::Essential));
    }

    #[test]
    fn combinations() {
        let mut idx = vec![0, 1];
        let mut count = 1;
        while next_combination(&mut idx, 4) {
            count += 1;
        }
        assert_eq!(count, 6);
    }
}
