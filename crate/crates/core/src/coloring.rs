//! Edge and face colourings of cubic planar graphs derived from a
//! Hamiltonian cycle.

use crate::embedding::Embedding;
use crate::error::{GraphError, Result};
use crate::graph::{EdgeId, Graph};
use crate::hamiltonicity::{validate_tour, ConstraintSet, Tour};
use std::collections::VecDeque;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeColor {
    Blue,
    Purple,
    Red,
}

impl EdgeColor {
    pub fn name(self) -> &'static str {
        match self {
            EdgeColor::Blue => "blue",
            EdgeColor::Purple => "purple",
            EdgeColor::Red => "red",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    pub colors: Vec<EdgeColor>,
}

impl EdgeColoring {
    pub fn count(&self, c: EdgeColor) -> usize {
        self.colors.iter().filter(|&&x| x == c).count()
    }

    pub fn edges_of(&self, c: EdgeColor) -> Vec<EdgeId> {
        (0..self.colors.len()).filter(|&e| self.colors[e] == c).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FaceColor {
    White,
    Blue,
    Red,
    Purple,
}

impl FaceColor {
    /// (inside the cycle, inside a red polygon)
    pub fn from_bits(b1: bool, b2: bool) -> Self {
        match (b1, b2) {
            (false, false) => FaceColor::White,
            (true, false) => FaceColor::Blue,
            (false, true) => FaceColor::Red,
            (true, true) => FaceColor::Purple,
        }
    }
}

/// One colour per face, indexed like `Embedding::faces()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceColoring {
    pub inside_cycle: Vec<bool>,
    pub inside_red: Vec<bool>,
}

impl FaceColoring {
    pub fn color(&self, f: usize) -> FaceColor {
        FaceColor::from_bits(self.inside_cycle[f], self.inside_red[f])
    }

    pub fn len(&self) -> usize {
        self.inside_cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inside_cycle.is_empty()
    }
}

fn check_cycle(g: &Graph, t: &Tour) -> Result<()> {
    if !crate::checkers::is_cubic(g) {
        return Err(GraphError::Precondition("graph is not cubic".into()));
    }
    validate_tour(g, t, &ConstraintSet::none(), true).map_err(GraphError::Precondition)?;
    if t.edges.len() % 2 != 0 {
        return Err(GraphError::Precondition("cycle has odd length".into()));
    }
    Ok(())
}

/// Cycle edges alternate blue and purple, starting with blue on the
/// lowest-id cycle edge; all remaining edges are red.
pub fn tait_edge_coloring(g: &Graph, t: &Tour) -> Result<EdgeColoring> {
    check_cycle(g, t)?;
    let start = (0..t.edges.len()).min_by_key(|&i| t.edges[i]).unwrap();
    let mut colors = vec![EdgeColor::Red; g.m()];
    for k in 0..t.edges.len() {
        let e = t.edges[(start + k) % t.edges.len()];
        colors[e] = if k % 2 == 0 { EdgeColor::Blue } else { EdgeColor::Purple };
    }
    Ok(EdgeColoring { colors })
}

pub fn validate_edge_coloring(g: &Graph, ec: &EdgeColoring) -> bool {
    ec.colors.len() == g.m()
        && (0..g.n()).all(|v| {
            let inc = g.incident(v);
            inc.iter().enumerate().all(|(i, &a)| {
                inc[i + 1..]
                    .iter()
                    .all(|&b| a != b && ec.colors[a] != ec.colors[b])
            }) && !inc.iter().any(|&e| g.edge(e).is_loop())
        })
}

/// Two-side labelling of faces where crossing an edge of `wall` flips the
/// side. Face 0 gets side `false`. Errors if the walls are inconsistent.
fn sides(emb: &Embedding, m: usize, wall: &[bool]) -> Result<Vec<bool>> {
    let (faces, face_of) = emb.face_index();
    let mut side: Vec<Option<bool>> = vec![None; faces.len()];
    if faces.is_empty() {
        return Ok(vec![]);
    }
    side[0] = Some(false);
    let mut q = VecDeque::from([0usize]);
    while let Some(f) = q.pop_front() {
        let s = side[f].unwrap();
        for &d in &faces[f].darts {
            let e = d / 2;
            debug_assert!(e < m);
            let other = face_of[d ^ 1];
            let want = s ^ wall[e];
            match side[other] {
                None => {
                    side[other] = Some(want);
                    q.push_back(other);
                }
                Some(x) if x != want => {
                    return Err(GraphError::Precondition("walls do not split the plane consistently".into()))
                }
                _ => {}
            }
        }
    }
    Ok(side.into_iter().map(|s| s.unwrap_or(false)).collect())
}

/// Faces inside the cycle (away from face 0) get the first bit; faces inside
/// an odd number of red polygons (purple and red edges) get the second.
pub fn face_four_coloring(g: &Graph, emb: &Embedding, t: &Tour) -> Result<FaceColoring> {
    check_cycle(g, t)?;
    if !emb.is_planar_for(g) {
        return Err(GraphError::InvalidEmbedding("embedding is not planar".into()));
    }
    let ec = tait_edge_coloring(g, t)?;
    let on_cycle = t.edge_mask(g.m());
    let red_polygons: Vec<bool> = ec.colors.iter().map(|&c| c != EdgeColor::Blue).collect();
    Ok(FaceColoring {
        inside_cycle: sides(emb, g.m(), &on_cycle)?,
        inside_red: sides(emb, g.m(), &red_polygons)?,
    })
}

pub fn validate_face_coloring(g: &Graph, emb: &Embedding, fc: &FaceColoring) -> bool {
    let (faces, face_of) = emb.face_index();
    if fc.len() != faces.len() {
        return false;
    }
    (0..g.m()).all(|e| {
        let (a, b) = (face_of[2 * e], face_of[2 * e + 1]);
        a != b && fc.color(a) != fc.color(b)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::*;
    use crate::hamiltonicity::{find_ham_cycle, Budget};
    use crate::planarity::planar_embedding;

    fn some_cycle(g: &Graph) -> Tour {
        find_ham_cycle(g, &ConstraintSet::none(), Budget::UNLIMITED).unwrap().tour.unwrap()
    }

    #[test]
    fn k4_colourings() {
        let g = complete(4);
        let t = some_cycle(&g);
        let ec = tait_edge_coloring(&g, &t).unwrap();
        assert!(validate_edge_coloring(&g, &ec));
        assert_eq!(ec.count(EdgeColor::Red), 2);
        let emb = planar_embedding(&g).unwrap();
        let fc = face_four_coloring(&g, &emb, &t).unwrap();
        assert!(validate_face_coloring(&g, &emb, &fc));
    }

    #[test]
    fn all_red_is_improper() {
        let g = complete(4);
        let ec = EdgeColoring {
            colors: vec![EdgeColor::Red; 6],
        };
        assert!(!validate_edge_coloring(&g, &ec));
    }

    #[test]
    fn cube_faces() {
        let g = cube();
        let t = some_cycle(&g);
        let emb = planar_embedding(&g).unwrap();
        let fc = face_four_coloring(&g, &emb, &t).unwrap();
        assert_eq!(fc.len(), 6);
        assert!(validate_face_coloring(&g, &emb, &fc));
    }

    #[test]
    fn rejects_non_cycle() {
        let g = cube();
        let t = Tour {
            vertices: (0..8).collect(),
            edges: vec![0; 8],
        };
        assert!(tait_edge_coloring(&g, &t).is_err());
    }
}
