//! 3-SAT to constrained Hamiltonicity.
//!
//! Each variable becomes four vertices joined by a doubled edge, a link and
//! another doubled edge; each clause becomes six vertices with three doubled
//! edges. Gadgets that force "exactly one" (XOR) or "at least one" (OR) of a
//! set of edges are kept as constraints; only the XOR gadget has a concrete
//! expansion (see [`expand_xor_concrete`]).

mod xor_module;

pub use xor_module::{expand_xor_concrete, XorExpansion, XorVariant};

use crate::error::{GraphError, Result};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::hamiltonicity::{
    find_ham_cycle, find_ham_path, validate_tour, Budget, ConstraintSet, HamResult, Tour, Verdict,
};
use crate::io::content_lines;
use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Literal {
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal { var, negated: false }
    }

    pub fn neg(var: usize) -> Self {
        Literal { var, negated: true }
    }

    pub fn eval(self, assignment: &[bool]) -> bool {
        assignment[self.var] != self.negated
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Formula {
    pub vars: usize,
    pub clauses: Vec<[Literal; 3]>,
}

impl Formula {
    pub fn new(vars: usize, clauses: Vec<[Literal; 3]>) -> Result<Formula> {
        for c in &clauses {
            for l in c {
                if l.var >= vars {
                    return Err(GraphError::Precondition(format!(
                        "literal uses variable {} but only {vars} declared",
                        l.var + 1
                    )));
                }
            }
        }
        Ok(Formula { vars, clauses })
    }

    /// DIMACS clause lines (`c` comments, optional `p cnf V C` header), each
    /// clause exactly three non-zero literals terminated by `0`.
    pub fn parse_dimacs(text: &str) -> Result<Formula> {
        let mut declared: Option<usize> = None;
        let mut clauses = Vec::new();
        let mut pending: Vec<i64> = Vec::new();
        let mut max_var = 0usize;
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let bad = |msg: String| GraphError::Parse { line: ln + 1, msg };
            if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            if line.starts_with('p') {
                let t: Vec<&str> = line.split_whitespace().collect();
                if t.len() != 4 || t[1] != "cnf" {
                    return Err(bad("expected `p cnf <vars> <clauses>`".into()));
                }
                declared = Some(t[2].parse().map_err(|_| bad("bad variable count".into()))?);
                continue;
            }
            for tok in line.split_whitespace() {
                let x: i64 = tok.parse().map_err(|_| bad(format!("bad literal {tok:?}")))?;
                if x != 0 {
                    pending.push(x);
                    continue;
                }
                if pending.len() != 3 {
                    return Err(bad(format!("clause has {} literals, expected 3", pending.len())));
                }
                let mut c = [Literal::pos(0); 3];
                for (i, &x) in pending.iter().enumerate() {
                    let var = x.unsigned_abs() as usize - 1;
                    max_var = max_var.max(var + 1);
                    c[i] = Literal { var, negated: x < 0 };
                }
                clauses.push(c);
                pending.clear();
            }
        }
        if !pending.is_empty() {
            return Err(GraphError::Parse {
                line: text.lines().count(),
                msg: "last clause not terminated by 0".into(),
            });
        }
        let vars = match declared {
            Some(v) if v < max_var => {
                return Err(GraphError::Precondition(format!("header declares {v} variables, {max_var} used")))
            }
            Some(v) => v,
            None => max_var,
        };
        Formula::new(vars, clauses)
    }

    pub fn to_dimacs(&self) -> String {
        let mut s = format!("p cnf {} {}\n", self.vars, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                let v = l.var as i64 + 1;
                let _ = write!(s, "{} ", if l.negated { -v } else { v });
            }
            s.push_str("0\n");
        }
        s
    }

    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        assignment.len() == self.vars && self.clauses.iter().all(|c| c.iter().any(|l| l.eval(assignment)))
    }

    /// Truth-table search; `None` if unsatisfiable.
    pub fn brute_force(&self) -> Option<Vec<bool>> {
        assert!(self.vars < 32, "truth table too large");
        (0u64..1 << self.vars)
            .map(|bits| (0..self.vars).map(|i| bits >> i & 1 == 1).collect::<Vec<bool>>())
            .find(|a| self.is_satisfied_by(a))
    }
}

/// Cycle instances join the two connectors with an OR; path instances
/// with an XOR.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HamMode {
    #[default]
    Cycle,
    Path,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeRole {
    /// Doubled-edge copy in the variable XOR on the positive side.
    VarGuardPos(usize),
    /// Doubled-edge copy in the variable XOR on the negative side.
    VarGuardNeg(usize),
    /// Used exactly when the variable is true; linked to positive literals.
    VarTrue(usize),
    /// Used exactly when the variable is false; linked to negative literals.
    VarFalse(usize),
    /// Clause copy linked by XOR to a variable edge (clause, position).
    LiteralLink(usize, usize),
    /// Clause copy in the clause's OR (clause, position).
    LiteralOr(usize, usize),
    /// Single edge inside a variable or clause chain.
    Rail,
    Connector,
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub formula: Formula,
    pub mode: HamMode,
    pub graph: Graph,
    pub constraints: ConstraintSet,
    pub roles: Vec<EdgeRole>,
}

/// Vertex `k` (0..4) of variable `i`.
pub fn var_vertex(i: usize, k: usize) -> VertexId {
    4 * i + k
}

/// Vertex `k` (0..6) of clause `j` in a formula with `vars` variables.
pub fn clause_vertex(vars: usize, j: usize, k: usize) -> VertexId {
    4 * vars + 6 * j + k
}

struct Ids {
    var_true: Vec<EdgeId>,
    var_false: Vec<EdgeId>,
    guard_pos: Vec<EdgeId>,
    guard_neg: Vec<EdgeId>,
    link: Vec<[EdgeId; 3]>,
    or: Vec<[EdgeId; 3]>,
    connectors: Vec<EdgeId>,
}

fn build(f: &Formula) -> (Graph, Vec<EdgeRole>, Ids) {
    let (n, m) = (f.vars, f.clauses.len());
    let mut g = Graph::new(4 * n + 6 * m);
    let mut roles = Vec::new();
    let mut ids = Ids {
        var_true: vec![],
        var_false: vec![],
        guard_pos: vec![],
        guard_neg: vec![],
        link: vec![],
        or: vec![],
        connectors: vec![],
    };
    let mut add = |g: &mut Graph, u, v, r| {
        roles.push(r);
        g.add_edge(u, v)
    };
    for i in 0..n {
        let v = |k| var_vertex(i, k);
        ids.guard_pos.push(add(&mut g, v(0), v(1), EdgeRole::VarGuardPos(i)));
        ids.var_true.push(add(&mut g, v(0), v(1), EdgeRole::VarTrue(i)));
        add(&mut g, v(1), v(2), EdgeRole::Rail);
        ids.guard_neg.push(add(&mut g, v(2), v(3), EdgeRole::VarGuardNeg(i)));
        ids.var_false.push(add(&mut g, v(2), v(3), EdgeRole::VarFalse(i)));
        if i + 1 < n {
            add(&mut g, v(3), var_vertex(i + 1, 0), EdgeRole::Rail);
        }
    }
    for j in 0..m {
        let w = |k| clause_vertex(n, j, k);
        let mut link = [0; 3];
        let mut or = [0; 3];
        for k in 0..3 {
            link[k] = add(&mut g, w(2 * k), w(2 * k + 1), EdgeRole::LiteralLink(j, k));
            or[k] = add(&mut g, w(2 * k), w(2 * k + 1), EdgeRole::LiteralOr(j, k));
            if k < 2 {
                add(&mut g, w(2 * k + 1), w(2 * k + 2), EdgeRole::Rail);
            }
        }
        if j + 1 < m {
            add(&mut g, w(5), clause_vertex(n, j + 1, 0), EdgeRole::Rail);
        }
        ids.link.push(link);
        ids.or.push(or);
    }
    if n > 0 && m > 0 {
        ids.connectors.push(add(&mut g, var_vertex(0, 0), clause_vertex(n, 0, 0), EdgeRole::Connector));
        ids.connectors.push(add(&mut g, var_vertex(n - 1, 3), clause_vertex(n, m - 1, 5), EdgeRole::Connector));
    } else if n > 0 {
        ids.connectors.push(add(&mut g, var_vertex(n - 1, 3), var_vertex(0, 0), EdgeRole::Connector));
    }
    (g, roles, ids)
}

/// The skeleton graph and its constraints.
pub fn build_instance(f: &Formula, mode: HamMode) -> Instance {
    let (graph, roles, ids) = build(f);
    let mut c = ConstraintSet::none();
    for i in 0..f.vars {
        c.xor_pairs.push((ids.guard_pos[i], ids.guard_neg[i]));
    }
    for (j, clause) in f.clauses.iter().enumerate() {
        for (k, l) in clause.iter().enumerate() {
            let var_edge = if l.negated { ids.var_false[l.var] } else { ids.var_true[l.var] };
            c.xor_pairs.push((ids.link[j][k], var_edge));
        }
        c.or_sets.push(ids.or[j].to_vec());
    }
    if ids.connectors.len() == 2 {
        let (a, b) = (ids.connectors[0], ids.connectors[1]);
        match mode {
            HamMode::Cycle => c.or_sets.push(vec![a, b]),
            HamMode::Path => c.xor_pairs.push((a, b)),
        }
    }
    Instance {
        formula: f.clone(),
        mode,
        graph,
        constraints: c,
        roles,
    }
}

impl Instance {
    pub fn edges_with_role(&self, pred: impl Fn(EdgeRole) -> bool) -> Vec<EdgeId> {
        (0..self.roles.len()).filter(|&e| pred(self.roles[e])).collect()
    }

    fn role_edge(&self, r: EdgeRole) -> EdgeId {
        self.roles.iter().position(|&x| x == r).expect("role present")
    }

    /// Edge list (one-based) followed by `XOR e1 e2` and `OR e1 e2 [e3]` lines.
    pub fn to_text(&self) -> String {
        let mut s = crate::io::to_edge_list(&self.graph);
        for &(a, b) in &self.constraints.xor_pairs {
            let _ = writeln!(s, "XOR {} {}", a + 1, b + 1);
        }
        for set in &self.constraints.or_sets {
            let ids: Vec<String> = set.iter().map(|e| (e + 1).to_string()).collect();
            let _ = writeln!(s, "OR {}", ids.join(" "));
        }
        s
    }
}

/// Constraint lines (`XOR`, `OR`, `REQUIRE`, `FORBID`, one-based edge ids)
/// as they appear after an edge list.
pub fn parse_constraints(lines: &[(usize, String)], m: usize) -> Result<ConstraintSet> {
    let mut c = ConstraintSet::none();
    for (ln, line) in lines {
        let bad = |msg: String| GraphError::Parse { line: *ln, msg };
        let t: Vec<&str> = line.split_whitespace().collect();
        let Some((&kw, rest)) = t.split_first() else { continue };
        let mut es = Vec::with_capacity(rest.len());
        for x in rest {
            let e: usize = x.parse().map_err(|_| bad(format!("bad edge id {x:?}")))?;
            if e == 0 || e > m {
                return Err(bad(format!("edge id {e} out of range 1..={m}")));
            }
            es.push(e - 1);
        }
        match (kw.to_ascii_uppercase().as_str(), es.len()) {
            ("XOR", 2) => c.xor_pairs.push((es[0], es[1])),
            ("OR", 2) | ("OR", 3) => c.or_sets.push(es),
            ("REQUIRE", _) => c.required.extend(es),
            ("FORBID", _) => c.forbidden.extend(es),
            _ => return Err(bad(format!("unrecognised constraint line {line:?}"))),
        }
    }
    Ok(c)
}

/// Parse the output of [`Instance::to_text`] (or any edge list with
/// constraint lines).
pub fn parse_instance_text(text: &str) -> Result<(Graph, ConstraintSet)> {
    let (g, rest) = crate::io::parse_edge_list_prefix(text)?;
    let c = parse_constraints(&rest, g.m())?;
    Ok((g, c))
}

#[derive(Debug, Clone)]
pub enum SatOutcome {
    Satisfiable { assignment: Vec<bool>, tour: Tour },
    Unsatisfiable,
    Inconclusive,
}

impl SatOutcome {
    pub fn assignment(&self) -> Option<&[bool]> {
        match self {
            SatOutcome::Satisfiable { assignment, .. } => Some(assignment),
            _ => None,
        }
    }
}

/// Search the instance and decode any tour found.
pub fn solve_instance(ri: &Instance, budget: Budget) -> Result<(SatOutcome, HamResult)> {
    if ri.graph.n() == 0 {
        let r = HamResult {
            verdict: Verdict::Found,
            tour: Some(Tour {
                vertices: vec![],
                edges: vec![],
            }),
            nodes_expanded: 0,
            elapsed: std::time::Duration::ZERO,
        };
        let out = SatOutcome::Satisfiable {
            assignment: vec![false; ri.formula.vars],
            tour: r.tour.clone().unwrap(),
        };
        return Ok((out, r));
    }
    let r = match ri.mode {
        HamMode::Cycle => find_ham_cycle(&ri.graph, &ri.constraints, budget)?,
        HamMode::Path => find_ham_path(&ri.graph, &ri.constraints, budget)?,
    };
    let out = match (&r.verdict, &r.tour) {
        (Verdict::Found, Some(t)) => SatOutcome::Satisfiable {
            assignment: decode_assignment(ri, t)?,
            tour: t.clone(),
        },
        (Verdict::NotFound, _) => SatOutcome::Unsatisfiable,
        _ => SatOutcome::Inconclusive,
    };
    Ok((out, r))
}

/// Variable `i` is true when its `VarTrue` edge is on the tour.
pub fn decode_assignment(ri: &Instance, t: &Tour) -> Result<Vec<bool>> {
    validate_tour(&ri.graph, t, &ri.constraints, ri.mode == HamMode::Cycle).map_err(GraphError::Precondition)?;
    let used = t.edge_mask(ri.graph.m());
    let a: Vec<bool> = (0..ri.formula.vars)
        .map(|i| used[ri.role_edge(EdgeRole::VarTrue(i))])
        .collect();
    if !ri.formula.is_satisfied_by(&a) {
        return Err(GraphError::Precondition("decoded assignment does not satisfy the formula".into()));
    }
    Ok(a)
}

/// The tour built from a satisfying assignment: through the variables in
/// order, across the far connector, back through the clauses, and (cycle
/// mode) home over the near connector.
pub fn encode_assignment(ri: &Instance, assignment: &[bool]) -> Result<Tour> {
    let f = &ri.formula;
    if !f.is_satisfied_by(assignment) {
        return Err(GraphError::Precondition("assignment does not satisfy the formula".into()));
    }
    let (n, m) = (f.vars, f.clauses.len());
    if n == 0 {
        return Ok(Tour {
            vertices: vec![],
            edges: vec![],
        });
    }
    let g = &ri.graph;
    let mut vertices = Vec::with_capacity(g.n());
    let mut edges = Vec::with_capacity(g.n());
    let between = |u, v| g.find_edge(u, v).expect("skeleton edge");
    for i in 0..n {
        let t = assignment[i];
        vertices.push(var_vertex(i, 0));
        edges.push(ri.role_edge(if t { EdgeRole::VarTrue(i) } else { EdgeRole::VarGuardPos(i) }));
        vertices.push(var_vertex(i, 1));
        edges.push(between(var_vertex(i, 1), var_vertex(i, 2)));
        vertices.push(var_vertex(i, 2));
        edges.push(ri.role_edge(if t { EdgeRole::VarGuardNeg(i) } else { EdgeRole::VarFalse(i) }));
        vertices.push(var_vertex(i, 3));
        if i + 1 < n {
            edges.push(between(var_vertex(i, 3), var_vertex(i + 1, 0)));
        }
    }
    let connectors = ri.edges_with_role(|r| r == EdgeRole::Connector);
    if m == 0 {
        if ri.mode == HamMode::Cycle {
            edges.push(connectors[0]);
        }
    } else {
        edges.push(connectors[1]);
        for j in (0..m).rev() {
            for k in (0..3).rev() {
                vertices.push(clause_vertex(n, j, 2 * k + 1));
                let lit = f.clauses[j][k].eval(assignment);
                edges.push(ri.role_edge(if lit { EdgeRole::LiteralOr(j, k) } else { EdgeRole::LiteralLink(j, k) }));
                vertices.push(clause_vertex(n, j, 2 * k));
                if k > 0 {
                    edges.push(between(clause_vertex(n, j, 2 * k), clause_vertex(n, j, 2 * k - 1)));
                }
            }
            if j > 0 {
                edges.push(between(clause_vertex(n, j, 0), clause_vertex(n, j - 1, 5)));
            }
        }
        if ri.mode == HamMode::Cycle {
            edges.push(connectors[0]);
        }
    }
    let t = Tour { vertices, edges };
    validate_tour(g, &t, &ri.constraints, ri.mode == HamMode::Cycle).map_err(GraphError::Precondition)?;
    Ok(t)
}

/// Vertex count of the fully expanded graph: skeleton, one 36-vertex XOR
/// module per variable, per literal occurrence and for the connectors,
/// 510 vertices of OR machinery per clause and 152 per crossing.
pub fn size_estimate(f: &Formula, crossings: usize) -> usize {
    let (n, m) = (f.vars, f.clauses.len());
    4 * n + 6 * m + 36 * (n + 3 * m + 1) + 510 * m + 152 * crossings
}

/// Parse `text` as either DIMACS or a one-line formula such as
/// `(-x | y | -z) & (x | -y | -z)`; variables in the latter are numbered by
/// first appearance.
pub fn parse_formula(text: &str) -> Result<Formula> {
    let body: String = content_lines(text).into_iter().map(|(_, l)| l).collect::<Vec<_>>().join(" ");
    if !body.contains('(') {
        return Formula::parse_dimacs(text);
    }
    let mut names: Vec<String> = Vec::new();
    let mut clauses = Vec::new();
    for part in body.split('&') {
        let p = part.trim().trim_start_matches('(').trim_end_matches(')');
        let lits: Vec<&str> = p.split('|').map(str::trim).collect();
        if lits.len() != 3 {
            return Err(GraphError::Parse {
                line: 1,
                msg: format!("clause {part:?} does not have three literals"),
            });
        }
        let mut c = [Literal::pos(0); 3];
        for (k, l) in lits.iter().enumerate() {
            let (neg, name) = match l.strip_prefix(['-', '~', '!']) {
                Some(rest) => (true, rest.trim()),
                None => (false, *l),
            };
            if name.is_empty() || !name.chars().all(|ch| ch.is_alphanumeric() || ch == '_') {
                return Err(GraphError::Parse {
                    line: 1,
                    msg: format!("bad literal {l:?}"),
                });
            }
            let var = match names.iter().position(|x| x == name) {
                Some(i) => i,
                None => {
                    names.push(name.to_string());
                    names.len() - 1
                }
            };
            c[k] = Literal { var, negated: neg };
        }
        clauses.push(c);
    }
    Formula::new(names.len(), clauses)
}

/// The worked two-clause example over x, y, z.
pub fn example_formula() -> Formula {
    Formula::new(
        3,
        vec![
            [Literal::neg(0), Literal::pos(1), Literal::neg(2)],
            [Literal::pos(0), Literal::neg(1), Literal::neg(2)],
        ],
    )
    .unwrap()
}

/// All eight sign patterns over three variables.
pub fn all_sign_patterns_formula() -> Formula {
    let clauses = (0..8)
        .map(|b: usize| {
            [0, 1, 2].map(|v| Literal {
                var: v,
                negated: b >> v & 1 == 1,
            })
        })
        .collect();
    Formula::new(3, clauses).unwrap()
}
