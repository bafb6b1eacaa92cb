//! Constrained Hamiltonian cycle and path search.
//!
//! Searches are exhaustive unless a budget runs out, in which case the result
//! is [`Verdict::Inconclusive`], never a false "no cycle".

mod search;

use crate::checkers::{bipartition, is_cubic};
use crate::error::{GraphError, Result};
use crate::graph::{EdgeId, Graph, VertexId};
use rayon::prelude::*;
use search::Mode;
use std::time::{Duration, Instant};

/// Edge constraints on the cycle or path being searched for.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConstraintSet {
    pub required: Vec<EdgeId>,
    pub forbidden: Vec<EdgeId>,
    /// Exactly one edge of each pair is used.
    pub xor_pairs: Vec<(EdgeId, EdgeId)>,
    /// At least one edge of each set is used.
    pub or_sets: Vec<Vec<EdgeId>>,
}

impl ConstraintSet {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn require(mut self, e: EdgeId) -> Self {
        self.required.push(e);
        self
    }

    pub fn forbid(mut self, e: EdgeId) -> Self {
        self.forbidden.push(e);
        self
    }

    pub fn is_empty(&self) -> bool {
        self.required.is_empty() && self.forbidden.is_empty() && self.xor_pairs.is_empty() && self.or_sets.is_empty()
    }

    fn check_ids(&self, m: usize) -> Result<()> {
        let all = self
            .required
            .iter()
            .chain(&self.forbidden)
            .chain(self.xor_pairs.iter().flat_map(|(a, b)| [a, b]))
            .chain(self.or_sets.iter().flatten());
        for &e in all {
            if e >= m {
                return Err(GraphError::NoSuchEdge(e));
            }
        }
        Ok(())
    }

    /// True when the edge set `used` meets every constraint.
    pub fn satisfied_by(&self, used: &[bool]) -> bool {
        self.required.iter().all(|&e| used[e])
            && self.forbidden.iter().all(|&e| !used[e])
            && self.xor_pairs.iter().all(|&(a, b)| used[a] != used[b])
            && self.or_sets.iter().all(|s| s.iter().any(|&e| used[e]))
    }
}

/// Limits on a single search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
}

impl Budget {
    pub const UNLIMITED: Budget = Budget {
        max_nodes: None,
        max_time: None,
    };

    pub fn nodes(n: u64) -> Self {
        Budget {
            max_nodes: Some(n),
            max_time: None,
        }
    }

    pub fn time(t: Duration) -> Self {
        Budget {
            max_nodes: None,
            max_time: Some(t),
        }
    }
}

impl Default for Budget {
    /// 10^9 node expansions or ten minutes.
    fn default() -> Self {
        Budget {
            max_nodes: Some(1_000_000_000),
            max_time: Some(Duration::from_secs(600)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Found,
    NotFound,
    Inconclusive,
}

/// A Hamiltonian cycle or path. For a cycle `edges[i]` joins `vertices[i]`
/// and `vertices[(i + 1) % n]`; for a path there are `n - 1` edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tour {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl Tour {
    /// Build from a vertex sequence using the lowest-id edge between neighbours.
    pub fn from_vertices(g: &Graph, vertices: &[VertexId], closed: bool) -> Result<Tour> {
        let k = vertices.len();
        let steps = if closed { k } else { k.saturating_sub(1) };
        let mut edges = Vec::with_capacity(steps);
        for i in 0..steps {
            let (a, b) = (vertices[i], vertices[(i + 1) % k]);
            if a >= g.n() || b >= g.n() {
                return Err(GraphError::NoSuchVertex(a.max(b)));
            }
            edges.push(g.find_edge(a, b).ok_or_else(|| {
                GraphError::Precondition(format!("no edge between {a} and {b}"))
            })?);
        }
        Ok(Tour {
            vertices: vertices.to_vec(),
            edges,
        })
    }

    pub fn edge_mask(&self, m: usize) -> Vec<bool> {
        let mut used = vec![false; m];
        for &e in &self.edges {
            used[e] = true;
        }
        used
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.edges.contains(&e)
    }
}

#[derive(Debug, Clone)]
pub struct HamResult {
    pub verdict: Verdict,
    pub tour: Option<Tour>,
    pub nodes_expanded: u64,
    pub elapsed: Duration,
}

impl HamResult {
    pub fn found(&self) -> bool {
        self.verdict == Verdict::Found
    }
}

/// Independent check that `t` is a Hamiltonian cycle (or path) meeting `c`.
pub fn validate_tour(g: &Graph, t: &Tour, c: &ConstraintSet, closed: bool) -> std::result::Result<(), String> {
    let n = g.n();
    if t.vertices.len() != n {
        return Err(format!("tour visits {} of {} vertices", t.vertices.len(), n));
    }
    let mut seen = vec![false; n];
    for &v in &t.vertices {
        if v >= n || seen[v] {
            return Err(format!("vertex {v} repeated or out of range"));
        }
        seen[v] = true;
    }
    let steps = if closed { n } else { n.saturating_sub(1) };
    if t.edges.len() != steps {
        return Err(format!("expected {steps} edges, got {}", t.edges.len()));
    }
    let mut used = vec![false; g.m()];
    for i in 0..steps {
        let e = t.edges[i];
        if e >= g.m() || used[e] {
            return Err(format!("edge {e} repeated or out of range"));
        }
        used[e] = true;
        let (a, b) = (t.vertices[i], t.vertices[(i + 1) % n]);
        let (x, y) = g.endpoints(e);
        if !((x == a && y == b) || (x == b && y == a)) {
            return Err(format!("edge {e} does not join {a} and {b}"));
        }
    }
    if closed && n == 2 && t.edges[0] == t.edges[1] {
        return Err("2-cycle reuses an edge".into());
    }
    if !c.satisfied_by(&used) {
        return Err("constraints violated".into());
    }
    Ok(())
}

fn bipartite_imbalance(g: &Graph) -> Option<usize> {
    bipartition(g).ok().map(|b| {
        let (x, y) = b.part_sizes();
        x.abs_diff(y)
    })
}

/// Find a Hamiltonian cycle meeting `c`.
pub fn find_ham_cycle(g: &Graph, c: &ConstraintSet, budget: Budget) -> Result<HamResult> {
    c.check_ids(g.m())?;
    let start = Instant::now();
    if g.n() < 2 || bipartite_imbalance(g).is_some_and(|d| d > 0) {
        return Ok(HamResult {
            verdict: Verdict::NotFound,
            tour: None,
            nodes_expanded: 0,
            elapsed: start.elapsed(),
        });
    }
    let out = search::run(g, c, budget, Mode::First, 1);
    let tour = out.tours.into_iter().next();
    let verdict = match (&tour, out.aborted) {
        (Some(_), _) => Verdict::Found,
        (None, true) => Verdict::Inconclusive,
        (None, false) => Verdict::NotFound,
    };
    if let Some(t) = &tour {
        debug_assert_eq!(validate_tour(g, t, c, true), Ok(()));
    }
    Ok(HamResult {
        verdict,
        tour,
        nodes_expanded: out.nodes,
        elapsed: start.elapsed(),
    })
}

/// Find a Hamiltonian path meeting `c` by closing it through an extra apex vertex.
pub fn find_ham_path(g: &Graph, c: &ConstraintSet, budget: Budget) -> Result<HamResult> {
    c.check_ids(g.m())?;
    let start = Instant::now();
    let n = g.n();
    let trivial = |tour: Option<Tour>| {
        let verdict = if tour.is_some() { Verdict::Found } else { Verdict::NotFound };
        Ok(HamResult {
            verdict,
            tour,
            nodes_expanded: 0,
            elapsed: start.elapsed(),
        })
    };
    if n == 0 {
        return trivial(None);
    }
    if n == 1 {
        let ok = c.satisfied_by(&vec![false; g.m()]);
        return trivial(ok.then(|| Tour {
            vertices: vec![0],
            edges: vec![],
        }));
    }
    if bipartite_imbalance(g).is_some_and(|d| d > 1) {
        return trivial(None);
    }
    let mut h = g.clone();
    let apex = h.add_vertex();
    for v in 0..n {
        h.add_edge(apex, v);
    }
    let out = search::run(&h, c, budget, Mode::First, 1);
    let tour = out.tours.into_iter().next().map(|t| {
        let k = t.vertices.iter().position(|&v| v == apex).unwrap();
        let vertices: Vec<VertexId> = (1..=n).map(|i| t.vertices[(k + i) % (n + 1)]).collect();
        let edges: Vec<EdgeId> = (1..n).map(|i| t.edges[(k + i) % (n + 1)]).collect();
        Tour { vertices, edges }
    });
    if let Some(t) = &tour {
        debug_assert_eq!(validate_tour(g, t, c, false), Ok(()));
    }
    let verdict = match (&tour, out.aborted) {
        (Some(_), _) => Verdict::Found,
        (None, true) => Verdict::Inconclusive,
        (None, false) => Verdict::NotFound,
    };
    Ok(HamResult {
        verdict,
        tour,
        nodes_expanded: out.nodes,
        elapsed: start.elapsed(),
    })
}

/// Hamiltonian path with prescribed end vertices.
pub fn find_ham_path_between(
    g: &Graph,
    s: VertexId,
    t: VertexId,
    c: &ConstraintSet,
    budget: Budget,
) -> Result<HamResult> {
    c.check_ids(g.m())?;
    if s >= g.n() || t >= g.n() {
        return Err(GraphError::NoSuchVertex(s.max(t)));
    }
    let start = Instant::now();
    if s == t {
        let tour = (g.n() == 1).then(|| Tour {
            vertices: vec![s],
            edges: vec![],
        });
        return Ok(HamResult {
            verdict: if tour.is_some() { Verdict::Found } else { Verdict::NotFound },
            tour,
            nodes_expanded: 0,
            elapsed: start.elapsed(),
        });
    }
    let mut h = g.clone();
    let z = h.add_vertex();
    let es = h.add_edge(z, s);
    let et = h.add_edge(z, t);
    let mut hc = c.clone();
    hc.required.extend([es, et]);
    let r = find_ham_cycle(&h, &hc, budget)?;
    let tour = r.tour.map(|cyc| {
        let n1 = cyc.vertices.len();
        let k = cyc.vertices.iter().position(|&v| v == z).unwrap();
        let mut vertices: Vec<VertexId> = (1..n1).map(|i| cyc.vertices[(k + i) % n1]).collect();
        let mut edges: Vec<EdgeId> = (1..n1 - 1).map(|i| cyc.edges[(k + i) % n1]).collect();
        if vertices[0] != s {
            vertices.reverse();
            edges.reverse();
        }
        Tour { vertices, edges }
    });
    Ok(HamResult {
        verdict: r.verdict,
        tour,
        nodes_expanded: r.nodes_expanded,
        elapsed: start.elapsed(),
    })
}

#[derive(Debug, Clone)]
pub struct CycleCount {
    pub complete: bool,
    pub total: u64,
    pub per_edge: Vec<u64>,
    pub nodes_expanded: u64,
}

/// Count Hamiltonian cycles, in total and through each edge.
pub fn count_ham_cycles(g: &Graph, c: &ConstraintSet, budget: Budget) -> Result<CycleCount> {
    c.check_ids(g.m())?;
    if g.n() < 2 || bipartite_imbalance(g).is_some_and(|d| d > 0) {
        return Ok(CycleCount {
            complete: true,
            total: 0,
            per_edge: vec![0; g.m()],
            nodes_expanded: 0,
        });
    }
    let out = search::run(g, c, budget, Mode::Count, 0);
    Ok(CycleCount {
        complete: out.exhausted,
        total: out.total,
        per_edge: out.per_edge,
        nodes_expanded: out.nodes,
    })
}

/// All Hamiltonian cycles meeting `c`, up to `limit` of them.
pub fn all_ham_cycles(g: &Graph, c: &ConstraintSet, limit: usize, budget: Budget) -> Result<(Vec<Tour>, bool)> {
    c.check_ids(g.m())?;
    if g.n() < 2 || bipartite_imbalance(g).is_some_and(|d| d > 0) {
        return Ok((Vec::new(), true));
    }
    let out = search::run(g, c, budget, Mode::Count, limit);
    let complete = out.exhausted && out.total as usize <= limit;
    Ok((out.tours, complete))
}

/// Result of one Hamiltonicity property check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Property {
    Holds,
    /// The offending edge(s): empty for plain Hamiltonicity, one edge for the
    /// single-edge properties, `[required, forbidden]` for the pair property.
    Fails(Vec<EdgeId>),
    Inconclusive,
}

impl Property {
    pub fn holds(&self) -> bool {
        *self == Property::Holds
    }
}

/// Hamiltonicity classes: H (some cycle), H+ (every edge lies on a cycle),
/// H- (every edge is avoided by a cycle), H+- (for every ordered pair of
/// distinct edges some cycle uses the first and avoids the second).
/// The H* class is not computed.
#[derive(Debug, Clone)]
pub struct Classification {
    pub hamiltonian: Property,
    pub plus: Property,
    pub minus: Property,
    pub plus_minus: Property,
    pub searches: usize,
}

struct Witnesses {
    masks: Vec<Vec<bool>>,
}

impl Witnesses {
    fn covers(&self, req: Option<EdgeId>, forb: Option<EdgeId>) -> bool {
        self.masks
            .iter()
            .any(|m| req.map_or(true, |e| m[e]) && forb.map_or(true, |e| !m[e]))
    }
}

/// Search for a cycle with one required and/or one forbidden edge, reusing known cycles.
fn check_pair(
    g: &Graph,
    w: &mut Witnesses,
    req: Option<EdgeId>,
    forb: Option<EdgeId>,
    budget: Budget,
    searches: &mut usize,
) -> Result<Verdict> {
    if w.covers(req, forb) {
        return Ok(Verdict::Found);
    }
    let mut c = ConstraintSet::none();
    c.required.extend(req);
    c.forbidden.extend(forb);
    *searches += 1;
    let r = find_ham_cycle(g, &c, budget)?;
    if let Some(t) = &r.tour {
        w.masks.push(t.edge_mask(g.m()));
    }
    Ok(r.verdict)
}

fn fold(verdicts: impl Iterator<Item = (Vec<EdgeId>, Verdict)>) -> Property {
    let mut inconclusive = false;
    for (what, v) in verdicts {
        match v {
            Verdict::NotFound => return Property::Fails(what),
            Verdict::Inconclusive => inconclusive = true,
            Verdict::Found => {}
        }
    }
    if inconclusive {
        Property::Inconclusive
    } else {
        Property::Holds
    }
}

/// Classify `g`. Each search gets its own `budget`. Pair checks are spread
/// over the current rayon pool; the reported failing pair is the
/// lexicographically smallest one.
pub fn classify(g: &Graph, budget: Budget) -> Result<Classification> {
    let m = g.m();
    let first = find_ham_cycle(g, &ConstraintSet::none(), budget)?;
    let mut searches = 1;
    let hamiltonian = match first.verdict {
        Verdict::Found => Property::Holds,
        Verdict::NotFound => Property::Fails(vec![]),
        Verdict::Inconclusive => Property::Inconclusive,
    };
    if !hamiltonian.holds() {
        let rest = match hamiltonian {
            Property::Fails(_) => Property::Fails(vec![]),
            _ => Property::Inconclusive,
        };
        return Ok(Classification {
            hamiltonian,
            plus: rest.clone(),
            minus: rest.clone(),
            plus_minus: rest,
            searches,
        });
    }
    let seed = first.tour.unwrap().edge_mask(m);
    let mut w = Witnesses {
        masks: vec![seed.clone()],
    };
    let mut plus_v = Vec::new();
    let mut minus_v = Vec::new();
    for e in 0..m {
        plus_v.push((vec![e], check_pair(g, &mut w, Some(e), None, budget, &mut searches)?));
        minus_v.push((vec![e], check_pair(g, &mut w, None, Some(e), budget, &mut searches)?));
    }
    let plus = fold(plus_v.into_iter());
    let minus = fold(minus_v.into_iter());
    let shared = w.masks;
    let per_row: Vec<Result<(Vec<(Vec<EdgeId>, Verdict)>, usize)>> = (0..m)
        .into_par_iter()
        .map(|e1| {
            let mut local = Witnesses { masks: shared.clone() };
            let mut count = 0;
            let mut row = Vec::new();
            for e2 in 0..m {
                if e1 == e2 {
                    continue;
                }
                let v = check_pair(g, &mut local, Some(e1), Some(e2), budget, &mut count)?;
                let stop = v == Verdict::NotFound;
                row.push((vec![e1, e2], v));
                if stop {
                    break;
                }
            }
            Ok((row, count))
        })
        .collect();
    let mut all = Vec::new();
    for r in per_row {
        let (row, count) = r?;
        searches += count;
        all.extend(row);
    }
    let plus_minus = fold(all.into_iter());
    Ok(Classification {
        hamiltonian,
        plus,
        minus,
        plus_minus,
        searches,
    })
}

/// Edges of a cubic graph not on the Hamiltonian cycle `t`: a perfect matching.
pub fn matching_complement(g: &Graph, t: &Tour) -> Result<Vec<EdgeId>> {
    if !is_cubic(g) {
        return Err(GraphError::Precondition("graph is not cubic".into()));
    }
    validate_tour(g, t, &ConstraintSet::none(), true).map_err(GraphError::Precondition)?;
    let used = t.edge_mask(g.m());
    Ok((0..g.m()).filter(|&e| !used[e]).collect())
}
