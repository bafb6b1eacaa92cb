//! Series-parallel reductions and delta-wye exchanges on multigraphs, and a
//! greedy driver that reduces a planar graph to K4.
//!
//! Id conventions, relied on by trace replay: removing vertices or edges
//! keeps the relative order of the survivors, and new edges are appended.
//! `delta_to_y` appends its new vertex last.

use crate::canon::{canonical_key, CanonicalKey};
use crate::checkers::is_3_connected;
use crate::error::{GraphError, Result};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::planarity::planar_embedding;
use std::collections::HashSet;
use std::fmt;

/// Replace a degree-2 vertex by an edge between its two distinct neighbours.
pub fn serial_reduce(g: &Graph, v: VertexId) -> Result<Graph> {
    if v >= g.n() {
        return Err(GraphError::NoSuchVertex(v));
    }
    let inc = g.incident(v);
    if inc.len() != 2 || inc[0] == inc[1] {
        return Err(GraphError::Precondition(format!("vertex {v} does not have degree 2")));
    }
    let (y, z) = (g.other_end(inc[0], v), g.other_end(inc[1], v));
    if y == z {
        return Err(GraphError::Precondition(format!("both edges of {v} go to {y}")));
    }
    let (mut h, map) = g.delete_vertices(&[v])?;
    h.add_edge(map[y].unwrap(), map[z].unwrap());
    Ok(h)
}

/// Remove `e2`, which must be parallel to `e1`.
pub fn parallel_reduce(g: &Graph, e1: EdgeId, e2: EdgeId) -> Result<Graph> {
    if e1 >= g.m() || e2 >= g.m() {
        return Err(GraphError::NoSuchEdge(e1.max(e2)));
    }
    let (a, b) = (g.edge(e1), g.edge(e2));
    let same = (a.u == b.u && a.v == b.v) || (a.u == b.v && a.v == b.u);
    if e1 == e2 || !same {
        return Err(GraphError::Precondition(format!("edges {e1} and {e2} are not parallel")));
    }
    Ok(g.delete_edges(&[e2])?.0)
}

/// Replace a degree-3 vertex by a triangle on its neighbours, keeping any
/// parallel edges this creates.
pub fn y_to_delta(g: &Graph, w: VertexId) -> Result<Graph> {
    if w >= g.n() {
        return Err(GraphError::NoSuchVertex(w));
    }
    if g.degree(w) != 3 {
        return Err(GraphError::Precondition(format!("vertex {w} does not have degree 3")));
    }
    let nb: Vec<VertexId> = g.neighbors(w).collect();
    if nb.contains(&w) {
        return Err(GraphError::Precondition(format!("vertex {w} carries a loop")));
    }
    let (mut h, map) = g.delete_vertices(&[w])?;
    let m: Vec<VertexId> = nb.iter().map(|&x| map[x].unwrap()).collect();
    h.add_edge(m[0], m[1]);
    h.add_edge(m[1], m[2]);
    h.add_edge(m[0], m[2]);
    Ok(h)
}

/// Corners of a triangle given by three edge ids, or `None`.
fn triangle_corners(g: &Graph, t: [EdgeId; 3]) -> Option<[VertexId; 3]> {
    if t.iter().any(|&e| e >= g.m()) || t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
        return None;
    }
    let mut vs: Vec<VertexId> = t.iter().flat_map(|&e| [g.edge(e).u, g.edge(e).v]).collect();
    vs.sort_unstable();
    vs.dedup();
    if vs.len() != 3 || t.iter().any(|&e| g.edge(e).is_loop()) {
        return None;
    }
    // three distinct corners and no two edges on the same pair
    let mut pairs: Vec<(VertexId, VertexId)> = t
        .iter()
        .map(|&e| {
            let ed = g.edge(e);
            (ed.u.min(ed.v), ed.u.max(ed.v))
        })
        .collect();
    pairs.sort_unstable();
    pairs.dedup();
    (pairs.len() == 3).then(|| [vs[0], vs[1], vs[2]])
}

/// Replace a triangle by a new degree-3 vertex joined to its corners.
pub fn delta_to_y(g: &Graph, t: [EdgeId; 3]) -> Result<Graph> {
    let corners = triangle_corners(g, t)
        .ok_or_else(|| GraphError::Precondition(format!("edges {t:?} do not form a triangle")))?;
    let (mut h, _) = g.delete_edges(&t)?;
    let w = h.add_vertex();
    for c in corners {
        h.add_edge(w, c);
    }
    Ok(h)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    Serial(VertexId),
    Parallel(EdgeId, EdgeId),
    YToDelta(VertexId),
    DeltaToY([EdgeId; 3]),
}

impl Step {
    pub fn apply(&self, g: &Graph) -> Result<Graph> {
        match *self {
            Step::Serial(v) => serial_reduce(g, v),
            Step::Parallel(a, b) => parallel_reduce(g, a, b),
            Step::YToDelta(w) => y_to_delta(g, w),
            Step::DeltaToY(t) => delta_to_y(g, t),
        }
    }

    /// Parse one line of the text form (1-based ids).
    pub fn parse(line: &str) -> Option<Step> {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let nums: Option<Vec<usize>> = toks.get(1..)?.iter().map(|t| t.parse::<usize>().ok()?.checked_sub(1)).collect();
        let nums = nums?;
        match (toks.first().copied()?, nums.as_slice()) {
            ("serial", [v]) => Some(Step::Serial(*v)),
            ("parallel", [a, b]) => Some(Step::Parallel(*a, *b)),
            ("y_to_delta", [w]) => Some(Step::YToDelta(*w)),
            ("delta_to_y", [a, b, c]) => Some(Step::DeltaToY([*a, *b, *c])),
            _ => None,
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Step::Serial(v) => write!(f, "serial {}", v + 1),
            Step::Parallel(a, b) => write!(f, "parallel {} {}", a + 1, b + 1),
            Step::YToDelta(w) => write!(f, "y_to_delta {}", w + 1),
            Step::DeltaToY([a, b, c]) => write!(f, "delta_to_y {} {} {}", a + 1, b + 1, c + 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: Vec<Step>,
    pub start_key: CanonicalKey,
    pub end_key: CanonicalKey,
}

impl ReductionTrace {
    pub fn to_text(&self) -> String {
        let mut s = format!("start {}\n", self.start_key);
        for st in &self.steps {
            s.push_str(&st.to_string());
            s.push('\n');
        }
        s.push_str(&format!("end {}\n", self.end_key));
        s
    }

    /// Apply every step to `start` and return the final graph.
    pub fn replay(&self, start: &Graph) -> Result<Graph> {
        let mut g = start.clone();
        for st in &self.steps {
            g = st.apply(&g)?;
        }
        Ok(g)
    }
}

/// Key used by traces: the face-walk code of a planar embedding, falling
/// back to the adjacency code for non-planar or disconnected small graphs.
pub fn trace_key(g: &Graph) -> Result<CanonicalKey> {
    if g.is_connected() {
        if let Some(emb) = planar_embedding(g) {
            return canonical_key(g, Some(&emb));
        }
    }
    canonical_key(g, None)
}

pub fn is_k4(g: &Graph) -> bool {
    g.n() == 4 && g.m() == 6 && g.is_simple()
}

/// The driver could not reach K4.
#[derive(Debug, Clone)]
pub struct Stuck {
    pub graph: Graph,
    pub steps: Vec<Step>,
    pub reason: String,
}

fn first_parallel_pair(g: &Graph) -> Option<(EdgeId, EdgeId)> {
    for e1 in 0..g.m() {
        let a = g.edge(e1);
        if a.is_loop() {
            continue;
        }
        for e2 in e1 + 1..g.m() {
            let b = g.edge(e2);
            if (a.u == b.u && a.v == b.v) || (a.u == b.v && a.v == b.u) {
                return Some((e1, e2));
            }
        }
    }
    None
}

fn first_serial_vertex(g: &Graph) -> Option<VertexId> {
    (0..g.n()).find(|&v| {
        let inc = g.incident(v);
        inc.len() == 2 && inc[0] != inc[1] && g.other_end(inc[0], v) != g.other_end(inc[1], v)
    })
}

/// Remove parallel edges one at a time, recording the steps.
fn clean_parallels(mut g: Graph, steps: &mut Vec<Step>) -> Result<Graph> {
    while let Some((a, b)) = first_parallel_pair(&g) {
        let st = Step::Parallel(a, b);
        g = st.apply(&g)?;
        steps.push(st);
    }
    Ok(g)
}

fn triangles(g: &Graph) -> Vec<[EdgeId; 3]> {
    let mut out = Vec::new();
    let m = g.m();
    for a in 0..m {
        for b in a + 1..m {
            for c in b + 1..m {
                if triangle_corners(g, [a, b, c]).is_some() {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

const MAX_STEPS: usize = 100_000;

/// Reduce a connected planar graph to K4: series-parallel steps first, then a
/// wye-to-delta at the lowest vertex whose result (after removing parallel
/// edges) stays 3-connected and is new, else a delta-to-wye at the lowest
/// triangle whose result is new.
pub fn reduce_to_k4(g: &Graph) -> std::result::Result<ReductionTrace, Stuck> {
    let stuck = |graph: &Graph, steps: &[Step], reason: &str| Stuck {
        graph: graph.clone(),
        steps: steps.to_vec(),
        reason: reason.to_string(),
    };
    if !g.is_connected() || planar_embedding(g).is_none() {
        return Err(stuck(g, &[], "input is not a connected planar graph"));
    }
    let start_key = trace_key(g).map_err(|e| stuck(g, &[], &e.to_string()))?;
    let mut seen: HashSet<CanonicalKey> = HashSet::from([start_key.clone()]);
    let mut steps = Vec::new();
    let mut cur = g.clone();
    while !is_k4(&cur) {
        if steps.len() > MAX_STEPS {
            return Err(stuck(&cur, &steps, "step limit reached"));
        }
        if let Some((a, b)) = first_parallel_pair(&cur) {
            let st = Step::Parallel(a, b);
            cur = st.apply(&cur).unwrap();
            steps.push(st);
            seen.insert(trace_key(&cur).map_err(|e| stuck(&cur, &steps, &e.to_string()))?);
            continue;
        }
        if let Some(v) = first_serial_vertex(&cur) {
            let st = Step::Serial(v);
            cur = st.apply(&cur).unwrap();
            steps.push(st);
            seen.insert(trace_key(&cur).map_err(|e| stuck(&cur, &steps, &e.to_string()))?);
            continue;
        }
        let was_3conn = is_3_connected(&cur);
        let mut advanced = false;
        for w in 0..cur.n() {
            if cur.degree(w) != 3 || cur.neighbors(w).any(|x| x == w) {
                continue;
            }
            let mut local = vec![Step::YToDelta(w)];
            let Ok(next) = y_to_delta(&cur, w).and_then(|h| clean_parallels(h, &mut local)) else {
                continue;
            };
            if was_3conn && next.n() >= 4 && !is_3_connected(&next) {
                continue;
            }
            let Ok(key) = trace_key(&next) else { continue };
            if !seen.insert(key) {
                continue;
            }
            debug_assert!(planar_embedding(&next).is_some());
            steps.extend(local);
            cur = next;
            advanced = true;
            break;
        }
        if advanced {
            continue;
        }
        for t in triangles(&cur) {
            let Ok(next) = delta_to_y(&cur, t) else { continue };
            let Ok(key) = trace_key(&next) else { continue };
            if !seen.insert(key) {
                continue;
            }
            steps.push(Step::DeltaToY(t));
            cur = next;
            advanced = true;
            break;
        }
        if !advanced {
            return Err(stuck(&cur, &steps, "no applicable step"));
        }
    }
    let end_key = trace_key(&cur).map_err(|e| stuck(&cur, &steps, &e.to_string()))?;
    Ok(ReductionTrace {
        steps,
        start_key,
        end_key,
    })
}
