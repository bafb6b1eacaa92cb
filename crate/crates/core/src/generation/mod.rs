//! The two reductions used to generate all cubic 3-connected bipartite planar
//! graphs from the cube, their reversals, and an enumerator built on them.
//!
//! R0 collapses a 4-face whose vertices each send their third edge outward;
//! R4 collapses a cube-minus-one-vertex hanging off a 3-edge cut.

mod catalog;
mod extend;

pub use catalog::{
    enumerate, enumerate_with, load_catalog, write_level, Catalog, CatalogEntry, Provenance,
};
pub use extend::{classify_r0_case, extend_ham_r4, Case4Report, R0Case};

use crate::checkers::{c3cbp_embedding, isomorphic_small, CutReport};
use crate::embedding::{tail, Embedding};
use crate::error::{GraphError, Result};
use crate::graph::{cube, EdgeId, Graph, VertexId};
use std::collections::BTreeSet;
use std::fmt;

/// Where a reversed reduction is applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExpansionSite {
    /// Subdivide `e1` and `e2` twice each and join the new vertices by two
    /// rungs. `flip` swaps which end of `e2` pairs with the start of `e1`.
    R0 { e1: EdgeId, e2: EdgeId, flip: bool },
    /// Replace a vertex by the cube minus one vertex.
    R4 { v: VertexId },
}

impl fmt::Display for ExpansionSite {
    /// One-based ids: `r0 <e1> <e2> <0|1>` or `r4 <v>`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ExpansionSite::R0 { e1, e2, flip } => write!(f, "r0 {} {} {}", e1 + 1, e2 + 1, flip as u8),
            ExpansionSite::R4 { v } => write!(f, "r4 {}", v + 1),
        }
    }
}

impl ExpansionSite {
    pub fn parse(s: &str) -> Option<ExpansionSite> {
        let t: Vec<&str> = s.split_whitespace().collect();
        let num = |x: &str| x.parse::<usize>().ok().filter(|&k| k >= 1).map(|k| k - 1);
        match t.as_slice() {
            ["r0", a, b, o] => Some(ExpansionSite::R0 {
                e1: num(a)?,
                e2: num(b)?,
                flip: match *o {
                    "0" => false,
                    "1" => true,
                    _ => return None,
                },
            }),
            ["r4", v] => Some(ExpansionSite::R4 { v: num(v)? }),
            _ => None,
        }
    }

    pub fn added_vertices(&self) -> usize {
        match self {
            ExpansionSite::R0 { .. } => 4,
            ExpansionSite::R4 { .. } => 6,
        }
    }
}

/// Result of a raw R0 expansion: `a-w-x-b` replaces `e1`, `c-y-z-d`
/// replaces `e2`, rungs `w-y` and `x-z`.
#[derive(Debug, Clone)]
pub struct R0Expansion {
    pub graph: Graph,
    pub e1: EdgeId,
    pub e2: EdgeId,
    pub outer: [VertexId; 4],
    pub inner: [VertexId; 4],
}

/// Result of a raw R4 expansion. `cube_vertex[l]` is the vertex playing the
/// cube label `l` (3-bit labels, label 7 absent); label 0 reuses `v`.
/// `neighbors[i]` is attached to cube label `R4_ATTACH[i]`.
#[derive(Debug, Clone)]
pub struct R4Expansion {
    pub graph: Graph,
    pub v: VertexId,
    pub neighbors: [VertexId; 3],
    pub cube_vertex: [VertexId; 7],
}

/// Cube labels of the three degree-2 vertices of the cube minus vertex 7.
pub const R4_ATTACH: [usize; 3] = [3, 5, 6];

fn check_r0_site(g: &Graph, e1: EdgeId, e2: EdgeId) -> Result<()> {
    if e1 >= g.m() {
        return Err(GraphError::NoSuchEdge(e1));
    }
    if e2 >= g.m() {
        return Err(GraphError::NoSuchEdge(e2));
    }
    let (a, b) = g.endpoints(e1);
    let (c, d) = g.endpoints(e2);
    if e1 == e2 || a == b || c == d || a == c || a == d || b == c || b == d {
        return Err(GraphError::Precondition(
            "r0 site needs two distinct edges without a common endpoint".into(),
        ));
    }
    Ok(())
}

/// R0 expansion without the face or C3CBP checks.
pub fn expand_r0_raw(g: &Graph, e1: EdgeId, e2: EdgeId, flip: bool) -> Result<R0Expansion> {
    check_r0_site(g, e1, e2)?;
    let (a, b) = g.endpoints(e1);
    let (mut c, mut d) = g.endpoints(e2);
    if flip {
        std::mem::swap(&mut c, &mut d);
    }
    let (mut h, _) = g.delete_edges(&[e1, e2])?;
    let n = g.n();
    let (w, x, y, z) = (n, n + 1, n + 2, n + 3);
    for _ in 0..4 {
        h.add_vertex();
    }
    for (p, q) in [(a, w), (w, x), (x, b), (c, y), (y, z), (z, d), (w, y), (x, z)] {
        h.add_edge(p, q);
    }
    Ok(R0Expansion {
        graph: h,
        e1,
        e2,
        outer: [a, b, c, d],
        inner: [w, x, y, z],
    })
}

/// Face ids (of `emb.faces()`) containing edge `e`.
fn faces_with_edge(emb: &Embedding, e: EdgeId) -> Vec<usize> {
    let (_, face_of) = emb.face_index();
    let mut f = vec![face_of[2 * e], face_of[2 * e + 1]];
    f.dedup();
    f
}

/// R0 expansion at a site whose edges share a face of `emb`. Errors if the
/// site is invalid or the result is not a C3CBP.
pub fn expand_r0(g: &Graph, emb: &Embedding, site: ExpansionSite) -> Result<(Graph, Embedding)> {
    let ExpansionSite::R0 { e1, e2, flip } = site else {
        return Err(GraphError::Precondition("not an r0 site".into()));
    };
    check_r0_site(g, e1, e2)?;
    let f1 = faces_with_edge(emb, e1);
    if !faces_with_edge(emb, e2).iter().any(|f| f1.contains(f)) {
        return Err(GraphError::Precondition("r0 edges do not share a face".into()));
    }
    let exp = expand_r0_raw(g, e1, e2, flip)?;
    let emb2 = c3cbp_embedding(&exp.graph)
        .ok_or_else(|| GraphError::Precondition("r0 expansion is not a C3CBP".into()))?;
    Ok((exp.graph, emb2))
}

/// R4 expansion without the C3CBP check. `v` must have degree 3 with three
/// distinct non-loop edges.
pub fn expand_r4_raw(g: &Graph, v: VertexId) -> Result<R4Expansion> {
    if v >= g.n() {
        return Err(GraphError::NoSuchVertex(v));
    }
    let inc = g.incident(v).to_vec();
    if inc.len() != 3 || inc.iter().any(|&e| g.edge(e).is_loop()) {
        return Err(GraphError::Precondition(format!("vertex {v} is not a simple degree-3 vertex")));
    }
    let neighbors = [g.other_end(inc[0], v), g.other_end(inc[1], v), g.other_end(inc[2], v)];
    let (mut h, _) = g.delete_edges(&inc)?;
    let mut cube_vertex = [v; 7];
    for slot in cube_vertex.iter_mut().skip(1) {
        *slot = h.add_vertex();
    }
    for l in 0..7usize {
        for bit in [1, 2, 4] {
            let k = l ^ bit;
            if k > l && k < 7 {
                h.add_edge(cube_vertex[l], cube_vertex[k]);
            }
        }
    }
    for i in 0..3 {
        h.add_edge(neighbors[i], cube_vertex[R4_ATTACH[i]]);
    }
    Ok(R4Expansion {
        graph: h,
        v,
        neighbors,
        cube_vertex,
    })
}

pub fn expand_r4(g: &Graph, _emb: &Embedding, v: VertexId) -> Result<(Graph, Embedding)> {
    let exp = expand_r4_raw(g, v)?;
    let emb2 = c3cbp_embedding(&exp.graph)
        .ok_or_else(|| GraphError::Precondition("r4 expansion is not a C3CBP".into()))?;
    Ok((exp.graph, emb2))
}

/// Apply a site of either kind.
pub fn expand(g: &Graph, emb: &Embedding, site: ExpansionSite) -> Result<(Graph, Embedding)> {
    match site {
        ExpansionSite::R0 { .. } => expand_r0(g, emb, site),
        ExpansionSite::R4 { v } => expand_r4(g, emb, v),
    }
}

/// All candidate sites in a fixed order: R0 pairs of vertex-disjoint
/// co-facial edges (smaller id first, both orientations), then every vertex.
pub fn expansion_sites(g: &Graph, emb: &Embedding) -> Vec<ExpansionSite> {
    let mut pairs = BTreeSet::new();
    for face in emb.faces() {
        let es = face.edges();
        for i in 0..es.len() {
            for j in i + 1..es.len() {
                let (e1, e2) = (es[i].min(es[j]), es[i].max(es[j]));
                if check_r0_site(g, e1, e2).is_ok() {
                    pairs.insert((e1, e2));
                }
            }
        }
    }
    let mut out = Vec::with_capacity(2 * pairs.len() + g.n());
    for (e1, e2) in pairs {
        for flip in [false, true] {
            out.push(ExpansionSite::R0 { e1, e2, flip });
        }
    }
    out.extend((0..g.n()).map(|v| ExpansionSite::R4 { v }));
    out
}

/// Vertices of a 4-face with their outward neighbours, or an error if a
/// vertex repeats or has its third edge inside the face.
fn quad_face(g: &Graph, emb: &Embedding, face: usize) -> Result<([VertexId; 4], [VertexId; 4])> {
    let faces = emb.faces();
    let f = faces
        .get(face)
        .ok_or_else(|| GraphError::Precondition(format!("no face {face}")))?;
    if f.len() != 4 {
        return Err(GraphError::Precondition(format!("face {face} has length {}", f.len())));
    }
    let vs: Vec<VertexId> = f.darts.iter().map(|&d| tail(g, d)).collect();
    let fe = f.edges();
    let mut inner = [0; 4];
    let mut outer = [0; 4];
    for i in 0..4 {
        inner[i] = vs[i];
        if g.degree(vs[i]) != 3 || vs[..i].contains(&vs[i]) {
            return Err(GraphError::Precondition("face is not a simple quadrilateral".into()));
        }
        let third: Vec<EdgeId> = g.incident(vs[i]).iter().copied().filter(|e| !fe.contains(e)).collect();
        if third.len() != 1 {
            return Err(GraphError::Precondition("face vertex lacks a single outward edge".into()));
        }
        let o = g.other_end(third[0], vs[i]);
        if vs.contains(&o) {
            return Err(GraphError::Precondition("face has a chord".into()));
        }
        outer[i] = o;
    }
    Ok((inner, outer))
}

/// R0 reduction at a 4-face. With `orientation == false` the outward
/// neighbours of face positions 0,1 and 2,3 are joined, otherwise 1,2 and
/// 3,0. Returns `None` if the result is not a C3CBP.
pub fn reduce_r0(
    g: &Graph,
    emb: &Embedding,
    face: usize,
    orientation: bool,
) -> Result<Option<(Graph, Embedding)>> {
    let (inner, outer) = quad_face(g, emb, face)?;
    let (mut h, map) = g.delete_vertices(&inner)?;
    let joins = if orientation {
        [(outer[1], outer[2]), (outer[3], outer[0])]
    } else {
        [(outer[0], outer[1]), (outer[2], outer[3])]
    };
    for (p, q) in joins {
        h.add_edge(map[p].unwrap(), map[q].unwrap());
    }
    Ok(c3cbp_embedding(&h).map(|e| (h, e)))
}

/// R4 reduction at a 3-edge cut: a side of 7 vertices that closes up into
/// the cube is replaced by one vertex. Tries `side_a` first.
pub fn reduce_r4(g: &Graph, _emb: &Embedding, cut: &CutReport) -> Result<Option<(Graph, Embedding)>> {
    if cut.edges.len() != 3 {
        return Err(GraphError::Precondition("r4 needs a 3-edge cut".into()));
    }
    let c1 = cube();
    for side in [&cut.side_a, &cut.side_b] {
        if side.len() != 7 {
            continue;
        }
        let mut inside = vec![false; g.n()];
        for &v in side.iter() {
            inside[v] = true;
        }
        let mut ends_in = Vec::with_capacity(3);
        let mut ends_out = Vec::with_capacity(3);
        for &e in &cut.edges {
            let (u, v) = g.endpoints(e);
            if inside[u] == inside[v] {
                return Err(GraphError::Precondition("cut edge does not cross the sides".into()));
            }
            if inside[u] {
                ends_in.push(u);
                ends_out.push(v);
            } else {
                ends_in.push(v);
                ends_out.push(u);
            }
        }
        let (mut closed, map) = g.induced(side);
        let apex = closed.add_vertex();
        for &u in &ends_in {
            closed.add_edge(map[u].unwrap(), apex);
        }
        if !isomorphic_small(&closed, &c1) {
            continue;
        }
        let (mut h, map) = g.delete_vertices(side)?;
        let hub = h.add_vertex();
        for &o in &ends_out {
            h.add_edge(map[o].unwrap(), hub);
        }
        return Ok(c3cbp_embedding(&h).map(|e| (h, e)));
    }
    Ok(None)
}

/// Every successful reduction of `g`: R0 at each 4-face in both
/// orientations, then R4 at each 3-edge cut.
pub fn reductions(g: &Graph, emb: &Embedding) -> Vec<(String, Graph, Embedding)> {
    let mut out = Vec::new();
    for (i, f) in emb.faces().iter().enumerate() {
        if f.len() != 4 {
            continue;
        }
        for o in [false, true] {
            if let Ok(Some((h, e))) = reduce_r0(g, emb, i, o) {
                out.push((format!("r0 face {} orientation {}", i, o as u8), h, e));
            }
        }
    }
    for cut in crate::checkers::edge_3cuts(g) {
        if let Ok(Some((h, e))) = reduce_r4(g, emb, &cut) {
            let ids: Vec<String> = cut.edges.iter().map(|e| (e + 1).to_string()).collect();
            out.push((format!("r4 cut {}", ids.join(",")), h, e));
        }
    }
    out
}

/// 4-faces of a cyclically 4-edge-connected C3CBP on which neither R0
/// orientation yields a C3CBP. Empty for the cube (nothing smaller exists)
/// and for graphs that are not cyclically 4-edge-connected.
pub fn r0_lemma_violations(g: &Graph, emb: &Embedding) -> Vec<usize> {
    if g.n() <= 8 || !crate::checkers::cyclically_4_edge_connected(g) {
        return vec![];
    }
    let mut bad = Vec::new();
    for (i, f) in emb.faces().iter().enumerate() {
        if f.len() != 4 {
            continue;
        }
        let ok = [false, true]
            .iter()
            .any(|&o| matches!(reduce_r0(g, emb, i, o), Ok(Some(_))));
        if !ok {
            bad.push(i);
        }
    }
    bad
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_key;
    use crate::checkers::{check_c3cbp, edge_3cuts};
    use crate::planarity::planar_embedding;

    fn key(g: &Graph) -> crate::CanonicalKey {
        let e = planar_embedding(g).unwrap();
        canonical_key(g, Some(&e)).unwrap()
    }

    fn opposite_face_edges(emb: &Embedding) -> (EdgeId, EdgeId) {
        let f = emb.faces().into_iter().find(|f| f.len() == 4).unwrap();
        let es = f.edges();
        (es[0].min(es[2]), es[0].max(es[2]))
    }

    #[test]
    fn cube_r0_gives_twelve() {
        let g = cube();
        let emb = planar_embedding(&g).unwrap();
        let (e1, e2) = opposite_face_edges(&emb);
        let mut ok = 0;
        for flip in [false, true] {
            if let Ok((h, _)) = expand_r0(&g, &emb, ExpansionSite::R0 { e1, e2, flip }) {
                assert_eq!(h.n(), 12);
                assert!(check_c3cbp(&h).is_c3cbp());
                ok += 1;
            }
        }
        assert!(ok >= 1);
    }

    #[test]
    fn r0_rejects_shared_vertex() {
        let g = cube();
        let emb = planar_embedding(&g).unwrap();
        let e = g.incident(0);
        assert!(expand_r0(&g, &emb, ExpansionSite::R0 { e1: e[0], e2: e[1], flip: false }).is_err());
    }

    #[test]
    fn r0_inverse() {
        let g = cube();
        let k0 = key(&g);
        let emb = planar_embedding(&g).unwrap();
        for site in expansion_sites(&g, &emb) {
            let ExpansionSite::R0 { e1, e2, flip } = site else { continue };
            let Ok((h, hemb)) = expand_r0(&g, &emb, site) else { continue };
            let exp = expand_r0_raw(&g, e1, e2, flip).unwrap();
            let new: Vec<VertexId> = exp.inner.to_vec();
            let (faces, _) = hemb.face_index();
            let fi = faces
                .iter()
                .position(|f| {
                    let mut vs = f.vertices(&h);
                    vs.sort_unstable();
                    vs == new
                })
                .unwrap();
            let back: Vec<_> = [false, true]
                .iter()
                .filter_map(|&o| reduce_r0(&h, &hemb, fi, o).unwrap())
                .map(|(r, _)| key(&r))
                .collect();
            assert!(back.contains(&k0));
        }
    }

    #[test]
    fn cube_faces_do_not_reduce() {
        let g = cube();
        let emb = planar_embedding(&g).unwrap();
        for i in 0..6 {
            for o in [false, true] {
                assert!(reduce_r0(&g, &emb, i, o).unwrap().is_none());
            }
        }
    }

    #[test]
    fn r4_inverse_and_twice() {
        let g = cube();
        let emb = planar_embedding(&g).unwrap();
        let (h, hemb) = expand_r4(&g, &emb, 0).unwrap();
        assert_eq!(h.n(), 14);
        let cuts = edge_3cuts(&h);
        let back: Vec<_> = cuts
            .iter()
            .filter_map(|c| reduce_r4(&h, &hemb, c).unwrap())
            .map(|(r, _)| key(&r))
            .collect();
        assert!(back.contains(&key(&g)));
        let (h2, _) = expand_r4(&h, &hemb, 0).unwrap();
        assert_eq!(h2.n(), 20);
        assert!(check_c3cbp(&h2).is_c3cbp());
    }

    #[test]
    fn r4_needs_seven_vertex_side() {
        let g = cube();
        let emb = planar_embedding(&g).unwrap();
        let (h, hemb) = expand_r4(&g, &emb, 0).unwrap();
        let (h2, h2emb) = expand_r4(&h, &hemb, h.n() - 1).unwrap();
        let mut sizes = BTreeSet::new();
        for c in edge_3cuts(&h2) {
            let small = c.side_a.len().min(c.side_b.len());
            sizes.insert(small);
            let r = reduce_r4(&h2, &h2emb, &c).unwrap();
            if small != 7 {
                assert!(r.is_none());
            }
        }
        assert!(sizes.contains(&7));
        let trivial = CutReport {
            edges: h2.incident(0).to_vec(),
            side_a: vec![0],
            side_b: (1..h2.n()).collect(),
            classification: crate::checkers::CutClass::None,
        };
        assert!(reduce_r4(&h2, &h2emb, &trivial).unwrap().is_none());
    }

    #[test]
    fn site_roundtrip() {
        for s in [
            ExpansionSite::R0 { e1: 0, e2: 5, flip: true },
            ExpansionSite::R4 { v: 3 },
        ] {
            assert_eq!(ExpansionSite::parse(&s.to_string()), Some(s));
        }
        assert_eq!(ExpansionSite::parse("r4 0"), None);
    }
}
