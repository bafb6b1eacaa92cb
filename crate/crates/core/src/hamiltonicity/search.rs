//! Edge-state branch and bound for Hamiltonian cycles.
//!
//! Every edge is unknown, in or out. After each decision the state is closed
//! under these rules:
//! - a vertex with two chosen edges drops the rest,
//! - a vertex with exactly two usable edges takes both,
//! - an edge joining the two ends of a chosen path is dropped unless it would
//!   complete the tour,
//! - XOR partners take opposite states; an OR set with one usable edge left takes it.
//!
//! A node is abandoned when the usable edges no longer form a 2-connected
//! spanning subgraph. Branching happens at the path end with the fewest open
//! choices, on its edge to the lowest-numbered neighbour.

use super::{Budget, ConstraintSet, Tour};
use crate::graph::{EdgeId, Graph, VertexId};
use std::time::Instant;

const UNK: u8 = 0;
const IN: u8 = 1;
const OUT: u8 = 2;

#[derive(Clone, Copy)]
enum Action {
    In(EdgeId),
    Out(EdgeId),
}

struct Conflict;

pub(crate) struct Problem<'a> {
    g: &'a Graph,
    xor_of: Vec<Vec<EdgeId>>,
    or_of: Vec<Vec<usize>>,
    or_sets: Vec<Vec<EdgeId>>,
}

#[derive(Clone)]
struct State {
    st: Vec<u8>,
    indeg: Vec<u32>,
    avail: Vec<u32>,
    end: Vec<u32>,
    in_count: usize,
    closed: bool,
}

impl<'a> Problem<'a> {
    pub(crate) fn new(g: &'a Graph, c: &ConstraintSet) -> Self {
        let mut xor_of = vec![Vec::new(); g.m()];
        for &(a, b) in &c.xor_pairs {
            xor_of[a].push(b);
            xor_of[b].push(a);
        }
        let mut or_of = vec![Vec::new(); g.m()];
        for (i, s) in c.or_sets.iter().enumerate() {
            for &e in s {
                or_of[e].push(i);
            }
        }
        Problem {
            g,
            xor_of,
            or_of,
            or_sets: c.or_sets.clone(),
        }
    }
}

impl State {
    fn new(g: &Graph) -> Self {
        let n = g.n();
        let mut st = vec![UNK; g.m()];
        let mut avail = vec![0u32; n];
        for (i, e) in g.edges().iter().enumerate() {
            if e.is_loop() {
                st[i] = OUT;
            } else {
                avail[e.u] += 1;
                avail[e.v] += 1;
            }
        }
        State {
            st,
            indeg: vec![0; n],
            avail,
            end: (0..n as u32).collect(),
            in_count: 0,
            closed: false,
        }
    }

    fn apply(&mut self, p: &Problem<'_>, first: Action, work: &mut Vec<Action>) -> Result<(), Conflict> {
        work.clear();
        work.push(first);
        while let Some(a) = work.pop() {
            match a {
                Action::In(e) => self.set_in(p, e, work)?,
                Action::Out(e) => self.set_out(p, e, work)?,
            }
        }
        Ok(())
    }

    fn check_vertex(&self, p: &Problem<'_>, x: VertexId, work: &mut Vec<Action>) -> Result<(), Conflict> {
        let (indeg, avail) = (self.indeg[x], self.avail[x]);
        if indeg > 2 || avail < 2 {
            return Err(Conflict);
        }
        if indeg == 2 && avail > 2 {
            for &e in p.g.incident(x) {
                if self.st[e] == UNK {
                    work.push(Action::Out(e));
                }
            }
        } else if avail == 2 && indeg < 2 {
            for &e in p.g.incident(x) {
                if self.st[e] == UNK {
                    work.push(Action::In(e));
                }
            }
        }
        Ok(())
    }

    fn set_in(&mut self, p: &Problem<'_>, e: EdgeId, work: &mut Vec<Action>) -> Result<(), Conflict> {
        match self.st[e] {
            IN => return Ok(()),
            OUT => return Err(Conflict),
            _ => {}
        }
        let (u, v) = p.g.endpoints(e);
        let n = self.indeg.len();
        self.st[e] = IN;
        self.indeg[u] += 1;
        self.indeg[v] += 1;
        self.in_count += 1;
        let eu = self.end[u] as usize;
        let ev = self.end[v] as usize;
        if eu == v {
            if self.in_count == n {
                self.closed = true;
            } else {
                return Err(Conflict);
            }
        } else {
            self.end[eu] = ev as u32;
            self.end[ev] = eu as u32;
            if self.in_count + 1 < n {
                for &f in p.g.incident(eu) {
                    if self.st[f] == UNK && p.g.other_end(f, eu) == ev {
                        work.push(Action::Out(f));
                    }
                }
            }
        }
        for &x in &p.xor_of[e] {
            work.push(Action::Out(x));
        }
        self.check_vertex(p, u, work)?;
        self.check_vertex(p, v, work)
    }

    fn set_out(&mut self, p: &Problem<'_>, e: EdgeId, work: &mut Vec<Action>) -> Result<(), Conflict> {
        match self.st[e] {
            OUT => return Ok(()),
            IN => return Err(Conflict),
            _ => {}
        }
        let (u, v) = p.g.endpoints(e);
        self.st[e] = OUT;
        self.avail[u] -= 1;
        self.avail[v] -= 1;
        for &x in &p.xor_of[e] {
            work.push(Action::In(x));
        }
        for &si in &p.or_of[e] {
            let set = &p.or_sets[si];
            if set.iter().any(|&f| self.st[f] == IN) {
                continue;
            }
            let mut open = set.iter().filter(|&&f| self.st[f] == UNK);
            match (open.next(), open.next()) {
                (None, _) => return Err(Conflict),
                (Some(&f), None) => work.push(Action::In(f)),
                _ => {}
            }
        }
        self.check_vertex(p, u, work)?;
        self.check_vertex(p, v, work)
    }

    /// Usable edges form a connected graph without cut vertices.
    fn usable_biconnected(&self, g: &Graph) -> bool {
        let n = g.n();
        if n <= 2 {
            return true;
        }
        let mut disc = vec![u32::MAX; n];
        let mut low = vec![0u32; n];
        let mut time = 0u32;
        disc[0] = 0;
        low[0] = 0;
        time += 1;
        let mut root_children = 0;
        // frames: (vertex, edge used to enter, next incidence index)
        let mut stack: Vec<(usize, usize, usize)> = vec![(0, usize::MAX, 0)];
        while let Some(top) = stack.last_mut() {
            let (v, pe, idx) = *top;
            let inc = g.incident(v);
            if idx < inc.len() {
                top.2 += 1;
                let e = inc[idx];
                if self.st[e] == OUT || e == pe {
                    continue;
                }
                let w = g.other_end(e, v);
                if disc[w] == u32::MAX {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    if v == 0 {
                        root_children += 1;
                    }
                    stack.push((w, e, 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if p != 0 && low[v] >= disc[p] {
                        return false;
                    }
                }
            }
        }
        time as usize == n && root_children <= 1
    }

    fn branch_edge(&self, g: &Graph) -> Option<EdgeId> {
        let mut best: Option<(u32, u32, VertexId)> = None;
        for v in 0..g.n() {
            let d = self.indeg[v];
            if d >= 2 {
                continue;
            }
            let open = self.avail[v] - d;
            if open == 0 {
                continue;
            }
            // path ends first, then fewest open edges, then lowest index
            let rank = (if d == 1 { 0 } else { 1 }, open, v);
            if best.map_or(true, |b| rank < b) {
                best = Some(rank);
            }
        }
        let (_, _, v) = best?;
        g.incident(v)
            .iter()
            .copied()
            .filter(|&e| self.st[e] == UNK)
            .min_by_key(|&e| (g.other_end(e, v), e))
    }

    fn tour(&self, g: &Graph) -> Tour {
        let n = g.n();
        let mut inc: Vec<Vec<EdgeId>> = vec![Vec::new(); n];
        for e in 0..g.m() {
            if self.st[e] == IN {
                let (a, b) = g.endpoints(e);
                inc[a].push(e);
                inc[b].push(e);
            }
        }
        let mut vertices = vec![0];
        let mut edges = Vec::with_capacity(n);
        let mut prev_e = usize::MAX;
        let mut cur = 0;
        for _ in 0..n {
            let e = if inc[cur][0] != prev_e { inc[cur][0] } else { inc[cur][1] };
            edges.push(e);
            cur = g.other_end(e, cur);
            prev_e = e;
            if vertices.len() < n {
                vertices.push(cur);
            }
        }
        Tour { vertices, edges }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Mode {
    First,
    Count,
}

pub(crate) struct Outcome {
    pub tours: Vec<Tour>,
    pub total: u64,
    pub per_edge: Vec<u64>,
    pub nodes: u64,
    pub exhausted: bool,
    pub aborted: bool,
}

struct Runner<'a, 'b> {
    p: &'b Problem<'a>,
    mode: Mode,
    keep: usize,
    budget: Budget,
    start: Instant,
    nodes: u64,
    aborted: bool,
    tours: Vec<Tour>,
    total: u64,
    per_edge: Vec<u64>,
    work: Vec<Action>,
}

impl Runner<'_, '_> {
    /// Returns true when the search should stop.
    fn search(&mut self, s: State) -> bool {
        self.nodes += 1;
        if self.budget.max_nodes.is_some_and(|m| self.nodes > m) {
            self.aborted = true;
            return true;
        }
        if self.nodes % 256 == 0 && self.budget.max_time.is_some_and(|t| self.start.elapsed() > t) {
            self.aborted = true;
            return true;
        }
        let g = self.p.g;
        if s.closed {
            self.total += 1;
            for e in 0..g.m() {
                if s.st[e] == IN {
                    self.per_edge[e] += 1;
                }
            }
            if self.tours.len() < self.keep {
                self.tours.push(s.tour(g));
            }
            return self.mode == Mode::First;
        }
        if !s.usable_biconnected(g) {
            return false;
        }
        let Some(e) = s.branch_edge(g) else {
            return false;
        };
        let mut take = s.clone();
        if take.apply(self.p, Action::In(e), &mut self.work).is_ok() && self.search(take) {
            return true;
        }
        let mut skip = s;
        if skip.apply(self.p, Action::Out(e), &mut self.work).is_ok() {
            return self.search(skip);
        }
        false
    }
}

/// Run the cycle search. `keep` bounds how many tours are stored.
pub(crate) fn run(g: &Graph, c: &ConstraintSet, budget: Budget, mode: Mode, keep: usize) -> Outcome {
    let p = Problem::new(g, c);
    let mut r = Runner {
        p: &p,
        mode,
        keep,
        budget,
        start: Instant::now(),
        nodes: 0,
        aborted: false,
        tours: Vec::new(),
        total: 0,
        per_edge: vec![0; g.m()],
        work: Vec::new(),
    };
    let mut s = State::new(g);
    let mut ok = g.n() >= 2;
    // isolated decisions first, then the vertex rules everywhere
    let mut initial: Vec<Action> = Vec::new();
    initial.extend(c.required.iter().map(|&e| Action::In(e)));
    initial.extend(c.forbidden.iter().map(|&e| Action::Out(e)));
    for a in initial {
        if !ok {
            break;
        }
        ok = s.apply(&p, a, &mut r.work).is_ok();
    }
    if ok {
        for v in 0..g.n() {
            let mut work = Vec::new();
            if s.check_vertex(&p, v, &mut work).is_err() {
                ok = false;
                break;
            }
            for a in work {
                if s.apply(&p, a, &mut r.work).is_err() {
                    ok = false;
                    break;
                }
            }
            if !ok {
                break;
            }
        }
    }
    if ok {
        // OR sets whose members are all already excluded, or down to one
        for set in &c.or_sets {
            if set.iter().any(|&f| s.st[f] == IN) {
                continue;
            }
            let open: Vec<EdgeId> = set.iter().copied().filter(|&f| s.st[f] == UNK).collect();
            if open.is_empty() {
                ok = false;
                break;
            }
            if open.len() == 1 && s.apply(&p, Action::In(open[0]), &mut r.work).is_err() {
                ok = false;
                break;
            }
        }
    }
    if ok {
        r.search(s);
    }
    let exhausted = !r.aborted;
    Outcome {
        tours: r.tours,
        total: r.total,
        per_edge: r.per_edge,
        nodes: r.nodes,
        exhausted,
        aborted: r.aborted,
    }
}
