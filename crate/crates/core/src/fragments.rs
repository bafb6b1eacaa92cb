//! Named graphs and three-stub fragments, with the lemma verifiers used to
//! build non-Hamiltonian cubic graphs.
//!
//! A fragment stub is an explicit degree-2 vertex; attaching the fragment
//! gives that vertex its third edge.

use crate::error::{GraphError, Result};
use crate::graph::{complete, complete_bipartite, grid, ladder, prism, EdgeId, Graph, VertexId};
use crate::hamiltonicity::{find_ham_cycle, find_ham_path_between, Budget, ConstraintSet, Tour, Verdict};
use std::collections::HashMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StubLabel {
    A,
    B,
    C,
}

impl StubLabel {
    pub const ALL: [StubLabel; 3] = [StubLabel::A, StubLabel::B, StubLabel::C];

    fn index(self) -> usize {
        self as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fragment {
    pub graph: Graph,
    /// Stub vertices for labels a, b, c.
    pub stubs: [VertexId; 3],
    pub required: Option<StubLabel>,
}

impl Fragment {
    pub fn stub(&self, l: StubLabel) -> VertexId {
        self.stubs[l.index()]
    }

    /// Stub vertices have degree 2, all other vertices degree 3.
    pub fn is_cubic_compatible(&self) -> bool {
        (0..self.graph.n()).all(|v| {
            let want = if self.stubs.contains(&v) { 2 } else { 3 };
            self.graph.degree(v) == want
        }) && self.stubs[0] != self.stubs[1]
            && self.stubs[1] != self.stubs[2]
            && self.stubs[0] != self.stubs[2]
    }
}

/// How three fragment copies are joined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Composition {
    /// Required stubs meet one hub; copy i's `c` stub meets copy i+1's `b` stub.
    #[default]
    HubAndRing,
    /// Three hubs, one per stub label, each joined to that stub of every copy.
    ThreeHubs,
}

/// Three copies of `f`. Copy `i` occupies vertices `i * f.n() ..`; hubs come last.
pub fn compose_triple(f: &Fragment, style: Composition) -> Graph {
    let k = f.graph.n();
    let mut g = f.graph.disjoint_union(&f.graph).disjoint_union(&f.graph);
    let at = |copy: usize, l: StubLabel| copy * k + f.stub(l);
    let req = f.required.unwrap_or(StubLabel::A);
    let others: Vec<StubLabel> = StubLabel::ALL.iter().copied().filter(|&l| l != req).collect();
    match style {
        Composition::HubAndRing => {
            let hub = g.add_vertex();
            for i in 0..3 {
                g.add_edge(hub, at(i, req));
            }
            for i in 0..3 {
                g.add_edge(at(i, others[1]), at((i + 1) % 3, others[0]));
            }
        }
        Composition::ThreeHubs => {
            for l in [req, others[0], others[1]] {
                let hub = g.add_vertex();
                for i in 0..3 {
                    g.add_edge(hub, at(i, l));
                }
            }
        }
    }
    g
}

/// A named graph together with its vertex labels and marked ("red") edges.
#[derive(Debug, Clone)]
pub struct Named {
    pub name: String,
    pub graph: Graph,
    pub labels: Vec<String>,
    pub marked: Vec<EdgeId>,
    pub fragment: Option<Fragment>,
}

impl Named {
    pub fn vertex(&self, label: &str) -> Option<VertexId> {
        self.labels.iter().position(|l| l == label)
    }

    /// Edge between two labelled vertices.
    pub fn edge(&self, a: &str, b: &str) -> Option<EdgeId> {
        self.graph.find_edge(self.vertex(a)?, self.vertex(b)?)
    }
}

/// Incremental construction by vertex label.
#[derive(Default)]
struct Builder {
    g: Graph,
    index: HashMap<String, VertexId>,
    labels: Vec<String>,
}

impl Builder {
    fn v(&mut self, name: &str) -> VertexId {
        if let Some(&v) = self.index.get(name) {
            return v;
        }
        let v = self.g.add_vertex();
        self.index.insert(name.to_string(), v);
        self.labels.push(name.to_string());
        v
    }

    fn e(&mut self, a: &str, b: &str) -> EdgeId {
        let (x, y) = (self.v(a), self.v(b));
        self.g.add_edge(x, y)
    }

    /// Space-separated `X-Y` pairs, each name given `suffix`.
    fn chain(&mut self, spec: &str, suffix: &str) {
        for pair in spec.split_whitespace() {
            let (a, b) = pair.split_once('-').expect("pair written as X-Y");
            self.e(&format!("{a}{suffix}"), &format!("{b}{suffix}"));
        }
    }

    fn named(self, name: &str, marked: Vec<EdgeId>) -> Named {
        Named {
            name: name.to_string(),
            graph: self.g,
            labels: self.labels,
            marked,
            fragment: None,
        }
    }
}

fn numbered(name: &str, g: Graph) -> Named {
    Named {
        name: name.to_string(),
        labels: (1..=g.n()).map(|i| i.to_string()).collect(),
        graph: g,
        marked: vec![],
        fragment: None,
    }
}

const CUBE_C1: &str = "A-B B-C C-D D-A E-F F-G G-H H-E A-E B-F C-G D-H";
const PENTAGONAL_PRISM: &str = "A-B B-C C-D D-E E-A A-F B-G C-H D-I E-J J-I I-H H-G G-F F-J";
/// Tutte's fragment; stubs Q (a, required), M (b), K (c).
const TUTTE_FRAGMENT: &str =
    "A-B B-C C-D D-E E-A A-L B-G C-O D-I E-J O-P O-N M-J J-I I-P P-Q Q-N N-G G-K K-L L-M";
/// Horton's 16-vertex circle without its two red edges A-P and H-I.
const HORTON_CIRCLE: &str = "A-B B-C C-D D-E E-F F-G G-H I-J J-K K-L L-M M-N N-O O-P A-F B-M C-H D-O E-J G-L I-N K-P";
/// Ellingham's 18-vertex fragment; G-H and K-J are the red edges.
const ELLINGHAM: &str = "B-C C-D D-E E-F F-A N-O O-P P-Q Q-R R-M A-G G-M B-H H-N C-I I-O D-J J-P E-K K-Q F-L L-R K-J A-N B-M G-H L-I";

/// Edge list printed by the BBL-38 listing, 1-based.
pub const BBL_38_EDGES: [(usize, usize); 57] = [
    (1, 2), (1, 4), (1, 18), (2, 3), (2, 6), (3, 8), (3, 20), (4, 5), (4, 11), (5, 6),
    (5, 9), (6, 7), (7, 8), (7, 10), (8, 14), (9, 10), (9, 11), (10, 13), (11, 12), (12, 13),
    (12, 15), (13, 14), (14, 15), (15, 16), (16, 17), (16, 19), (17, 18), (17, 22), (18, 21), (19, 20),
    (19, 23), (20, 38), (21, 22), (21, 36), (22, 23), (23, 24), (24, 25), (24, 27), (25, 26), (25, 28),
    (26, 27), (26, 30), (27, 32), (28, 29), (28, 33), (29, 30), (29, 34), (30, 31), (31, 32), (31, 35),
    (32, 38), (33, 34), (33, 36), (34, 35), (35, 37), (36, 37), (37, 38),
];

fn assert_cubic(n: &Named) {
    assert!(
        (0..n.graph.n()).all(|v| n.graph.degree(v) == 3),
        "{} is not cubic",
        n.name
    );
}

pub fn cube_c1() -> Named {
    let mut b = Builder::default();
    b.chain(CUBE_C1, "");
    b.named("cube_c1", vec![])
}

pub fn pentagonal_prism() -> Named {
    let mut b = Builder::default();
    b.chain(PENTAGONAL_PRISM, "");
    b.named("pentagonal_prism", vec![])
}

pub fn tutte_fragment() -> Named {
    let mut b = Builder::default();
    b.chain(TUTTE_FRAGMENT, "");
    let stubs = [b.v("Q"), b.v("M"), b.v("K")];
    let mut n = b.named("tutte_fragment", vec![]);
    let f = Fragment {
        graph: n.graph.clone(),
        stubs,
        required: Some(StubLabel::A),
    };
    assert!(f.is_cubic_compatible() && n.graph.n() == 15);
    n.fragment = Some(f);
    n
}

/// Tutte's 46-vertex graph as drawn: three fragments, hub R on every Q,
/// and the ring K1-M2, K2-M3, K3-M1.
pub fn tutte_46() -> Named {
    let mut b = Builder::default();
    for i in 1..=3 {
        b.chain(TUTTE_FRAGMENT, &i.to_string());
    }
    b.chain("R-Q1 R-Q2 R-Q3 K1-M2 K2-M3 K3-M1", "");
    let n = b.named("tutte_46", vec![]);
    assert_eq!(n.graph.n(), 46);
    assert_cubic(&n);
    n
}

pub fn bbl_38() -> Named {
    let g = Graph::from_edge_list(38, &BBL_38_EDGES, true).expect("literal edge list");
    let n = numbered("bbl_38", g);
    assert_eq!(n.graph.m(), 57);
    assert_cubic(&n);
    n
}

/// The 16-vertex circle with red edges e1 = A-P and e2 = H-I (marked).
pub fn horton_circle() -> Named {
    let mut b = Builder::default();
    b.chain(HORTON_CIRCLE, "");
    let e1 = b.e("A", "P");
    let e2 = b.e("H", "I");
    let n = b.named("horton_circle", vec![e1, e2]);
    assert_eq!(n.graph.n(), 16);
    assert_cubic(&n);
    n
}

/// Two red-edge-free circles joined by e = P1-A2 (marked), A1-H2, I1-P2, H1-I2.
pub fn horton_fragment_closed() -> Named {
    let mut b = Builder::default();
    b.chain(HORTON_CIRCLE, "1");
    b.chain(HORTON_CIRCLE, "2");
    let e = b.e("P1", "A2");
    b.chain("A1-H2 I1-P2 H1-I2", "");
    let n = b.named("horton_fragment_closed", vec![e]);
    assert_eq!(n.graph.n(), 32);
    assert_cubic(&n);
    n
}

/// The 31-vertex fragment: the closed fragment with A2 cut away, leaving
/// stubs P1 (a, required: it carries edge e), F2 (b) and B2 (c).
pub fn horton_fragment() -> Named {
    let mut b = Builder::default();
    b.chain(HORTON_CIRCLE, "1");
    b.chain(
        "B-C C-D D-E E-F F-G G-H I-J J-K K-L L-M M-N N-O O-P B-M C-H D-O E-J G-L I-N K-P",
        "2",
    );
    b.chain("A1-H2 I1-P2 H1-I2", "");
    let stubs = [b.v("P1"), b.v("F2"), b.v("B2")];
    let mut n = b.named("horton_fragment", vec![]);
    let f = Fragment {
        graph: n.graph.clone(),
        stubs,
        required: Some(StubLabel::A),
    };
    assert!(f.is_cubic_compatible() && n.graph.n() == 31);
    n.fragment = Some(f);
    n
}

/// Three Horton fragments on three hubs.
pub fn horton_96() -> Named {
    let f = horton_fragment();
    let g = compose_triple(f.fragment.as_ref().unwrap(), Composition::ThreeHubs);
    let mut labels = Vec::new();
    for c in ["a", "b", "c"] {
        labels.extend(f.labels.iter().map(|l| format!("{c}{l}")));
    }
    labels.extend(["X", "Y", "Z"].map(String::from));
    let n = Named {
        name: "horton_96".into(),
        graph: g,
        labels,
        marked: vec![],
        fragment: None,
    };
    assert_eq!(n.graph.n(), 96);
    assert_cubic(&n);
    n
}

/// Fragments a, b and c, where c loses its stub F2; the freed neighbours
/// E2 and G2 take the roles Q and R of the drawing.
pub fn horton_92() -> Named {
    let body = "B-C C-D D-E E-F F-G G-H I-J J-K K-L L-M M-N N-O O-P B-M C-H D-O E-J G-L I-N K-P";
    let mut b = Builder::default();
    for c in ["a", "b"] {
        b.chain(HORTON_CIRCLE, &format!("1{c}"));
        b.chain(body, &format!("2{c}"));
        b.chain(&format!("A1{c}-H2{c} I1{c}-P2{c} H1{c}-I2{c}"), "");
    }
    b.chain(HORTON_CIRCLE, "1c");
    b.chain(
        "B-C C-D D-E G-H I-J J-K K-L L-M M-N N-O O-P B-M C-H D-O E-J G-L I-N K-P",
        "2c",
    );
    b.chain("A1c-H2c I1c-P2c H1c-I2c", "");
    b.chain("P1a-B2c F2a-P1b B2a-P1c B2b-E2c F2b-G2c", "");
    let mut n = b.named("horton_92", vec![]);
    // relabel to the drawing's names
    for l in &mut n.labels {
        if let Some(base) = l.strip_suffix('a').or_else(|| l.strip_suffix('b')).or_else(|| l.strip_suffix('c')) {
            let c = &l[l.len() - 1..];
            *l = format!("{c}{base}");
        }
    }
    assert_eq!(n.graph.n(), 92);
    assert_cubic(&n);
    n
}

/// Ellingham's fragment with red edges G-H and K-J (marked).
pub fn ellingham_fragment() -> Named {
    let mut b = Builder::default();
    b.chain(ELLINGHAM, "");
    let g = b.g.clone();
    let gh = g.find_edge(b.index["G"], b.index["H"]).unwrap();
    let kj = g.find_edge(b.index["K"], b.index["J"]).unwrap();
    let n = b.named("ellingham_fragment", vec![gh, kj]);
    assert_eq!((n.graph.n(), n.graph.m()), (18, 27));
    assert_cubic(&n);
    n
}

/// Two Ellingham fragments with the red edges subdivided (G-S-T-H, K-U-V-J)
/// joined through the tree on P, Q, R, X, Y, S'.
pub fn georges_50() -> Named {
    let without_red = "B-C C-D D-E E-F F-A N-O O-P P-Q Q-R R-M A-G G-M B-H H-N C-I I-O D-J J-P E-K K-Q F-L L-R A-N B-M L-I";
    let mut b = Builder::default();
    for i in ["1", "2"] {
        b.chain(without_red, i);
        b.chain("G-S S-T T-H K-U U-V V-J", i);
    }
    b.chain("tP-X tQ-X X-Y Y-tR Y-S'", "");
    b.chain("T1-tP V2-tP T2-tQ V1-tQ U1-tR U2-tR S1-S' S2-S'", "");
    let n = b.named("georges_50", vec![]);
    assert_eq!(n.graph.n(), 50);
    assert_cubic(&n);
    n
}

/// A C3CBP on 14 vertices with the 3-cut D-K, C-I, E-J.
pub fn c3cbp_with_3cut() -> Named {
    let mut b = Builder::default();
    b.chain(
        "A-C A-E A-G F-G G-H C-F F-D E-H H-D D-K C-I E-J K-N N-J K-L L-I L-M M-N I-B J-B B-M",
        "",
    );
    let n = b.named("c3cbp_3cut_14", vec![]);
    assert_eq!(n.graph.n(), 14);
    assert_cubic(&n);
    n
}

fn parse_grid(name: &str) -> Option<(usize, usize)> {
    let inner = name.strip_prefix("grid(")?.strip_suffix(')')?;
    let (a, b) = inner.split_once(',')?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}

pub const NAMES: [&str; 19] = [
    "cube_c1",
    "k4",
    "k33",
    "pentagonal_prism",
    "hex_prism",
    "grid(m,n)",
    "r1",
    "r2",
    "tutte_fragment",
    "tutte_46",
    "bbl_38",
    "horton_circle",
    "horton_fragment",
    "horton_fragment_closed",
    "horton_96",
    "horton_92",
    "ellingham_fragment",
    "georges_50",
    "c3cbp_3cut_14",
];

pub fn named_graph(name: &str) -> Result<Named> {
    let n = match name {
        "cube_c1" | "cube" => cube_c1(),
        "k4" => numbered("k4", complete(4)),
        "k33" => numbered("k33", complete_bipartite(3, 3)),
        "pentagonal_prism" => pentagonal_prism(),
        "hex_prism" => numbered("hex_prism", prism(6)),
        "r1" => numbered("r1", ladder(3)),
        "r2" => numbered("r2", ladder(4)),
        "tutte_fragment" => tutte_fragment(),
        "tutte_46" => tutte_46(),
        "bbl_38" => bbl_38(),
        "horton_circle" => horton_circle(),
        "horton_fragment" => horton_fragment(),
        "horton_fragment_closed" => horton_fragment_closed(),
        "horton_96" => horton_96(),
        "horton_92" => horton_92(),
        "ellingham_fragment" => ellingham_fragment(),
        "georges_50" => georges_50(),
        "c3cbp_3cut_14" => c3cbp_with_3cut(),
        other => match parse_grid(other) {
            Some((r, c)) if r > 0 && c > 0 => numbered(other, grid(r, c)),
            _ => return Err(GraphError::Precondition(format!("unknown graph name {other:?}"))),
        },
    };
    Ok(n)
}

/// Outcome of a lemma check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LemmaCheck {
    Holds,
    /// The lemma is false; the traversal is a counterexample when one exists.
    Fails { reason: String, witness: Option<Tour> },
    Inconclusive,
}

impl LemmaCheck {
    pub fn holds(&self) -> bool {
        *self == LemmaCheck::Holds
    }
}

/// Required-edge property of a fragment: spanning paths exist from the
/// required stub to each other stub, and none joins the other two stubs.
pub fn verify_required_edge(f: &Fragment, budget: Budget) -> Result<LemmaCheck> {
    let req = f
        .required
        .ok_or_else(|| GraphError::Precondition("fragment has no required stub".into()))?;
    let r = f.stub(req);
    let others: Vec<VertexId> = StubLabel::ALL.iter().filter(|&&l| l != req).map(|&l| f.stub(l)).collect();
    let none = ConstraintSet::none();
    let mut inconclusive = false;
    for &s in &others {
        let res = find_ham_path_between(&f.graph, r, s, &none, budget)?;
        match res.verdict {
            Verdict::Found => {}
            Verdict::Inconclusive => inconclusive = true,
            Verdict::NotFound => {
                return Ok(LemmaCheck::Fails {
                    reason: format!("no spanning path from stub {r} to stub {s}"),
                    witness: None,
                })
            }
        }
    }
    let res = find_ham_path_between(&f.graph, others[0], others[1], &none, budget)?;
    match res.verdict {
        Verdict::Found => Ok(LemmaCheck::Fails {
            reason: "a spanning path avoids the required stub".into(),
            witness: res.tour,
        }),
        Verdict::Inconclusive => Ok(LemmaCheck::Inconclusive),
        Verdict::NotFound if inconclusive => Ok(LemmaCheck::Inconclusive),
        Verdict::NotFound => Ok(LemmaCheck::Holds),
    }
}

fn no_cycle_under(g: &Graph, cs: &[ConstraintSet], budget: Budget, what: &str) -> Result<LemmaCheck> {
    let mut inconclusive = false;
    for c in cs {
        let r = find_ham_cycle(g, c, budget)?;
        match r.verdict {
            Verdict::Found => {
                return Ok(LemmaCheck::Fails {
                    reason: what.to_string(),
                    witness: r.tour,
                })
            }
            Verdict::Inconclusive => inconclusive = true,
            Verdict::NotFound => {}
        }
    }
    Ok(if inconclusive {
        LemmaCheck::Inconclusive
    } else {
        LemmaCheck::Holds
    })
}

/// No Hamiltonian cycle uses exactly one of `e1`, `e2`.
pub fn verify_xor_parity(g: &Graph, e1: EdgeId, e2: EdgeId, budget: Budget) -> Result<LemmaCheck> {
    let cs = [
        ConstraintSet::none().require(e1).forbid(e2),
        ConstraintSet::none().require(e2).forbid(e1),
    ];
    no_cycle_under(g, &cs, budget, "a Hamiltonian cycle uses exactly one of the edges")
}

/// No Hamiltonian cycle uses both `e1` and `e2`.
pub fn verify_forbidden_pair(g: &Graph, e1: EdgeId, e2: EdgeId, budget: Budget) -> Result<LemmaCheck> {
    let cs = [ConstraintSet::none().require(e1).require(e2)];
    no_cycle_under(g, &cs, budget, "a Hamiltonian cycle uses both edges")
}

/// Names accepted by [`verify_named_lemma`].
pub const LEMMA_NAMES: [&str; 6] = [
    "tutte_fragment",
    "horton_fragment",
    "horton_fragment_closed",
    "horton_circle",
    "ellingham_fragment",
    "pentagonal_prism",
];

/// Run the lemma attached to a named gadget; returns a one-line statement
/// of what was checked together with the outcome.
pub fn verify_named_lemma(name: &str, budget: Budget) -> Result<(String, LemmaCheck)> {
    let n = named_graph(name)?;
    let label = |e: EdgeId| {
        let (u, v) = n.graph.endpoints(e);
        format!("{}-{}", n.labels[u], n.labels[v])
    };
    match name {
        "tutte_fragment" | "horton_fragment" => {
            let f = n.fragment.as_ref().expect("fragment");
            let req = f.stub(f.required.unwrap_or(StubLabel::A));
            let what = format!("every spanning path through the fragment uses stub {}", n.labels[req]);
            Ok((what, verify_required_edge(f, budget)?))
        }
        "horton_fragment_closed" => {
            let e = n.marked[0];
            let cs = [ConstraintSet::none().forbid(e)];
            let what = format!("every Hamiltonian cycle uses {}", label(e));
            Ok((what, no_cycle_under(&n.graph, &cs, budget, "a Hamiltonian cycle avoids the edge")?))
        }
        "horton_circle" => {
            let (a, b) = (n.marked[0], n.marked[1]);
            let what = format!("no Hamiltonian cycle uses exactly one of {} and {}", label(a), label(b));
            Ok((what, verify_xor_parity(&n.graph, a, b, budget)?))
        }
        "ellingham_fragment" => {
            let (a, b) = (n.marked[0], n.marked[1]);
            let what = format!("no Hamiltonian cycle uses both {} and {}", label(a), label(b));
            Ok((what, verify_forbidden_pair(&n.graph, a, b, budget)?))
        }
        "pentagonal_prism" => {
            let (a, b) = (n.edge("A", "F").unwrap(), n.edge("C", "H").unwrap());
            let what = format!("no Hamiltonian cycle uses both {} and {}", label(a), label(b));
            Ok((what, verify_forbidden_pair(&n.graph, a, b, budget)?))
        }
        _ => Err(GraphError::Precondition(format!(
            "no lemma attached to {name:?}; try one of {}",
            LEMMA_NAMES.join(", ")
        ))),
    }
}
