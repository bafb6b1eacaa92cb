//! Concrete XOR module: two rails of six vertices whose end vertices are the
//! endpoints of the replaced edges, four rungs, and a required-edge fragment
//! in place of the second and fifth bottom vertices with its required stub
//! on the rung.

use crate::checkers::bipartition;
use crate::error::{GraphError, Result};
use crate::fragments::{horton_fragment, tutte_fragment, Fragment, StubLabel};
use crate::graph::{EdgeId, Graph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XorVariant {
    /// Planar, built from Tutte fragments.
    Tait,
    /// Bipartite, built from Horton fragments.
    TutteConj,
}

impl XorVariant {
    pub fn fragment(self) -> Fragment {
        let named = match self {
            XorVariant::Tait => tutte_fragment(),
            XorVariant::TutteConj => horton_fragment(),
        };
        named.fragment.expect("fragment constructor sets the fragment")
    }

    /// Vertices a module adds to the host.
    pub fn module_size(self) -> usize {
        6 + 2 * self.fragment().graph.n()
    }
}

#[derive(Debug, Clone)]
pub struct XorExpansion {
    pub graph: Graph,
    /// Ids (in `graph`) of the first and last edge of each route: the top
    /// route stands for the first replaced edge, the bottom for the second.
    pub top_ends: [EdgeId; 2],
    pub bottom_ends: [EdgeId; 2],
    /// Vertices added, in order.
    pub module: Vec<VertexId>,
}

/// Replace the vertex-disjoint edges `e1 = (p, q)` and `e2 = (r, s)` by an
/// XOR module. In a bipartite host `e2` is oriented so the module stays
/// bipartite.
pub fn expand_xor_concrete(g: &Graph, e1: EdgeId, e2: EdgeId, variant: XorVariant) -> Result<XorExpansion> {
    for e in [e1, e2] {
        if e >= g.m() {
            return Err(GraphError::NoSuchEdge(e));
        }
    }
    let (p, q) = g.endpoints(e1);
    let (mut r, mut s) = g.endpoints(e2);
    if e1 == e2 || p == q || r == s || [p, q].iter().any(|x| *x == r || *x == s) {
        return Err(GraphError::Precondition("xor module needs two vertex-disjoint edges".into()));
    }
    if let Ok(bp) = bipartition(g) {
        if bp.side[p] == bp.side[r] {
            std::mem::swap(&mut r, &mut s);
        }
    }
    let frag = variant.fragment();
    let (mut h, _) = g.delete_edges(&[e1, e2])?;
    let start = h.n();
    // Top rail p - t1 - t2 - t3 - t4 - q; bottom r - F - b2 - b3 - F' - s.
    let t: Vec<VertexId> = (0..4).map(|_| h.add_vertex()).collect();
    let b2 = h.add_vertex();
    let b3 = h.add_vertex();
    let place = |h: &mut Graph| {
        let off = h.n();
        for _ in 0..frag.graph.n() {
            h.add_vertex();
        }
        for ed in frag.graph.edges() {
            h.add_edge(off + ed.u, off + ed.v);
        }
        let req = frag.required.unwrap_or(StubLabel::A);
        let others: Vec<StubLabel> = StubLabel::ALL.into_iter().filter(|&l| l != req).collect();
        (off + frag.stub(req), off + frag.stub(others[0]), off + frag.stub(others[1]))
    };
    let (f1_req, f1_left, f1_right) = place(&mut h);
    let (f2_req, f2_left, f2_right) = place(&mut h);
    let top_first = h.add_edge(p, t[0]);
    h.add_edge(t[0], t[1]);
    h.add_edge(t[1], t[2]);
    h.add_edge(t[2], t[3]);
    let top_last = h.add_edge(t[3], q);
    let bottom_first = h.add_edge(r, f1_left);
    h.add_edge(f1_right, b2);
    h.add_edge(b2, b3);
    h.add_edge(b3, f2_left);
    let bottom_last = h.add_edge(f2_right, s);
    h.add_edge(t[0], f1_req);
    h.add_edge(t[1], b2);
    h.add_edge(t[2], b3);
    h.add_edge(t[3], f2_req);
    let module: Vec<VertexId> = (start..h.n()).collect();
    debug_assert_eq!(module.len(), variant.module_size());
    Ok(XorExpansion {
        graph: h,
        top_ends: [top_first, top_last],
        bottom_ends: [bottom_first, bottom_last],
        module,
    })
}
