//! Carrying a Hamiltonian cycle through the reversed reductions.

use super::{expand_r0_raw, ExpansionSite, R0Expansion, R4Expansion, R4_ATTACH};
use crate::error::{GraphError, Result};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::hamiltonicity::{
    find_ham_cycle, matching_complement, validate_tour, Budget, ConstraintSet, HamResult, Tour,
};

/// Hamiltonian paths through the cube minus vertex 7 between pairs of
/// attachment labels, as cube labels.
const R4_TEMPLATES: [(usize, usize, [usize; 7]); 3] = [
    (3, 5, [3, 2, 6, 4, 0, 1, 5]),
    (3, 6, [3, 1, 5, 4, 0, 2, 6]),
    (5, 6, [5, 1, 3, 2, 0, 4, 6]),
];

fn check_input_cycle(g: &Graph, cycle: &Tour) -> Result<()> {
    validate_tour(g, cycle, &ConstraintSet::none(), true).map_err(GraphError::Precondition)
}

/// Splice `insert(i)` after position `i` of the closed vertex sequence.
fn splice<F>(cycle: &Tour, mut insert: F) -> Vec<VertexId>
where
    F: FnMut(usize) -> Vec<VertexId>,
{
    let mut out = Vec::new();
    for i in 0..cycle.vertices.len() {
        out.push(cycle.vertices[i]);
        out.extend(insert(i));
    }
    out
}

/// Extend a Hamiltonian cycle of `g` to the R4 expansion `exp` of `g`.
pub fn extend_ham_r4(g: &Graph, cycle: &Tour, exp: &R4Expansion) -> Result<Tour> {
    check_input_cycle(g, cycle)?;
    let k = cycle.vertices.len();
    let pos = cycle
        .vertices
        .iter()
        .position(|&x| x == exp.v)
        .ok_or_else(|| GraphError::Precondition("cycle misses the expanded vertex".into()))?;
    let prev = cycle.vertices[(pos + k - 1) % k];
    let next = cycle.vertices[(pos + 1) % k];
    let slot = |u: VertexId| exp.neighbors.iter().position(|&x| x == u);
    let (Some(i), Some(j)) = (slot(prev), slot(next)) else {
        return Err(GraphError::Precondition("cycle neighbours of v are not its neighbours".into()));
    };
    let (from, to) = (R4_ATTACH[i], R4_ATTACH[j]);
    let path: Vec<usize> = R4_TEMPLATES
        .iter()
        .find_map(|&(s, t, p)| {
            if (s, t) == (from, to) {
                Some(p.to_vec())
            } else if (t, s) == (from, to) {
                Some(p.iter().rev().copied().collect())
            } else {
                None
            }
        })
        .ok_or_else(|| GraphError::Precondition("cycle enters and leaves v on one edge".into()))?;
    let mut seq = Vec::with_capacity(k + 6);
    for (idx, &x) in cycle.vertices.iter().enumerate() {
        if idx == pos {
            seq.extend(path.iter().map(|&l| exp.cube_vertex[l]));
        } else {
            seq.push(x);
        }
    }
    let t = Tour::from_vertices(&exp.graph, &seq, true)?;
    validate_tour(&exp.graph, &t, &ConstraintSet::none(), true).map_err(GraphError::Precondition)?;
    Ok(t)
}

/// Outcome of carrying a cycle through an R0 expansion.
#[derive(Debug, Clone)]
pub enum R0Case {
    /// The cycle used both replaced edges.
    Both(Tour),
    FirstOnly(Tour),
    SecondOnly(Tour),
    /// The cycle used neither; no local extension exists.
    Neither(Box<Case4Report>),
}

impl R0Case {
    pub fn number(&self) -> u8 {
        match self {
            R0Case::Both(_) => 1,
            R0Case::FirstOnly(_) => 2,
            R0Case::SecondOnly(_) => 3,
            R0Case::Neither(_) => 4,
        }
    }

    pub fn extended(&self) -> Option<&Tour> {
        match self {
            R0Case::Both(t) | R0Case::FirstOnly(t) | R0Case::SecondOnly(t) => Some(t),
            R0Case::Neither(r) => r.rescued.as_ref(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Case4Report {
    /// Edges of `g` off the input cycle.
    pub matching: Vec<EdgeId>,
    /// Search in `g` for a Hamiltonian cycle through both replaced edges.
    pub both_edges: HamResult,
    /// Search in `g` for a Hamiltonian cycle through every matching edge.
    pub through_matching: HamResult,
    /// Extension of the `both_edges` cycle, when one was found.
    pub rescued: Option<Tour>,
}

fn extend_r0(exp: &R0Expansion, cycle: &Tour, case: u8) -> Result<Tour> {
    let [a, b, c, d] = exp.outer;
    let [w, x, y, z] = exp.inner;
    let k = cycle.vertices.len();
    let seq = splice(cycle, |i| {
        let e = cycle.edges[i];
        let (p, q) = (cycle.vertices[i], cycle.vertices[(i + 1) % k]);
        let mid: Vec<VertexId> = if e == exp.e1 {
            if case == 2 {
                vec![w, y, z, x]
            } else {
                vec![w, x]
            }
        } else if e == exp.e2 {
            if case == 3 {
                vec![y, w, x, z]
            } else {
                vec![y, z]
            }
        } else {
            return vec![];
        };
        let forward = if e == exp.e1 { (p, q) == (a, b) } else { (p, q) == (c, d) };
        if forward {
            mid
        } else {
            mid.into_iter().rev().collect()
        }
    });
    let t = Tour::from_vertices(&exp.graph, &seq, true)?;
    validate_tour(&exp.graph, &t, &ConstraintSet::none(), true).map_err(GraphError::Precondition)?;
    Ok(t)
}

/// Which of the two replaced edges `cycle` uses, with the extended cycle for
/// the first three cases and the second-cycle experiment for the fourth.
pub fn classify_r0_case(g: &Graph, cycle: &Tour, site: ExpansionSite, budget: Budget) -> Result<R0Case> {
    let ExpansionSite::R0 { e1, e2, flip } = site else {
        return Err(GraphError::Precondition("not an r0 site".into()));
    };
    check_input_cycle(g, cycle)?;
    let exp = expand_r0_raw(g, e1, e2, flip)?;
    match (cycle.contains_edge(e1), cycle.contains_edge(e2)) {
        (true, true) => Ok(R0Case::Both(extend_r0(&exp, cycle, 1)?)),
        (true, false) => Ok(R0Case::FirstOnly(extend_r0(&exp, cycle, 2)?)),
        (false, true) => Ok(R0Case::SecondOnly(extend_r0(&exp, cycle, 3)?)),
        (false, false) => {
            let matching = matching_complement(g, cycle)?;
            let both_edges = find_ham_cycle(g, &ConstraintSet::none().require(e1).require(e2), budget)?;
            let mut all = ConstraintSet::none();
            for &e in &matching {
                all = all.require(e);
            }
            let through_matching = find_ham_cycle(g, &all, budget)?;
            let rescued = match &both_edges.tour {
                Some(t) => Some(extend_r0(&exp, t, 1)?),
                None => None,
            };
            Ok(R0Case::Neither(Box::new(Case4Report {
                matching,
                both_edges,
                through_matching,
                rescued,
            })))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generation::expand_r4_raw;
    use crate::graph::cube;

    fn cycles(g: &Graph) -> Vec<Tour> {
        crate::hamiltonicity::all_ham_cycles(g, &ConstraintSet::none(), usize::MAX, Budget::UNLIMITED)
            .unwrap()
            .0
    }

    #[test]
    fn templates_are_paths() {
        let c = cube();
        for (s, t, p) in R4_TEMPLATES {
            assert_eq!((p[0], p[6]), (s, t));
            let mut seen = p.to_vec();
            seen.sort_unstable();
            assert_eq!(seen, (0..7).collect::<Vec<_>>());
            assert!(p.windows(2).all(|w| c.find_edge(w[0], w[1]).is_some()));
        }
    }

    #[test]
    fn r4_every_vertex_every_cycle() {
        let g = cube();
        for t in cycles(&g) {
            for v in 0..8 {
                let exp = expand_r4_raw(&g, v).unwrap();
                let t2 = extend_ham_r4(&g, &t, &exp).unwrap();
                assert_eq!(t2.vertices.len(), 14);
            }
        }
    }

    #[test]
    fn r4_rejects_non_cycle() {
        let g = cube();
        let exp = expand_r4_raw(&g, 0).unwrap();
        let t = Tour {
            vertices: vec![0, 1, 3, 2],
            edges: vec![],
        };
        assert!(extend_ham_r4(&g, &t, &exp).is_err());
    }

    #[test]
    fn r0_all_cases_on_cube() {
        let g = cube();
        let mut seen = [false; 5];
        for t in cycles(&g) {
            for e1 in 0..g.m() {
                for e2 in e1 + 1..g.m() {
                    for flip in [false, true] {
                        let site = ExpansionSite::R0 { e1, e2, flip };
                        let Ok(r) = classify_r0_case(&g, &t, site, Budget::UNLIMITED) else {
                            continue;
                        };
                        seen[r.number() as usize] = true;
                        if r.number() < 4 {
                            assert_eq!(r.extended().unwrap().vertices.len(), 12);
                        }
                    }
                }
            }
        }
        assert!(seen[1] && seen[2] && seen[3] && seen[4]);
    }
}
