//! Rotation systems and face tracing.
//!
//! A dart is a directed copy of an edge: dart `2e` runs `u -> v` and dart
//! `2e + 1` runs `v -> u` for edge `e = (u, v)`. A rotation system lists,
//! for every vertex, the darts leaving it in cyclic order.

use crate::error::{GraphError, Result};
use crate::graph::{EdgeId, Graph, VertexId};

pub type Dart = usize;

pub fn dart_edge(d: Dart) -> EdgeId {
    d / 2
}

pub fn reverse(d: Dart) -> Dart {
    d ^ 1
}

pub fn tail(g: &Graph, d: Dart) -> VertexId {
    let e = g.edge(d / 2);
    if d % 2 == 0 {
        e.u
    } else {
        e.v
    }
}

pub fn head(g: &Graph, d: Dart) -> VertexId {
    tail(g, reverse(d))
}

/// A face as the cyclic sequence of darts walked along its boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub darts: Vec<Dart>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    pub fn vertices(&self, g: &Graph) -> Vec<VertexId> {
        self.darts.iter().map(|&d| tail(g, d)).collect()
    }

    pub fn edges(&self) -> Vec<EdgeId> {
        self.darts.iter().map(|&d| dart_edge(d)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    rotation: Vec<Vec<Dart>>,
    next: Vec<Dart>,
    prev: Vec<Dart>,
}

impl Embedding {
    /// Check that every dart leaves the vertex it is listed at, exactly once.
    pub fn new(g: &Graph, rotation: Vec<Vec<Dart>>) -> Result<Self> {
        if rotation.len() != g.n() {
            return Err(GraphError::InvalidEmbedding(format!(
                "rotation covers {} vertices, graph has {}",
                rotation.len(),
                g.n()
            )));
        }
        let nd = 2 * g.m();
        let mut next = vec![usize::MAX; nd];
        let mut prev = vec![usize::MAX; nd];
        for (v, rot) in rotation.iter().enumerate() {
            for (i, &d) in rot.iter().enumerate() {
                if d >= nd || tail(g, d) != v {
                    return Err(GraphError::InvalidEmbedding(format!(
                        "dart {d} listed at vertex {v}"
                    )));
                }
                if next[d] != usize::MAX {
                    return Err(GraphError::InvalidEmbedding(format!("dart {d} listed twice")));
                }
                let nx = rot[(i + 1) % rot.len()];
                next[d] = nx;
                prev[nx] = d;
            }
        }
        if next.iter().any(|&x| x == usize::MAX) {
            return Err(GraphError::InvalidEmbedding("some dart is missing".into()));
        }
        Ok(Embedding {
            rotation,
            next,
            prev,
        })
    }

    pub fn rotation(&self, v: VertexId) -> &[Dart] {
        &self.rotation[v]
    }

    pub fn rotations(&self) -> &[Vec<Dart>] {
        &self.rotation
    }

    /// Next dart around the tail of `d`.
    pub fn rot_next(&self, d: Dart) -> Dart {
        self.next[d]
    }

    pub fn rot_prev(&self, d: Dart) -> Dart {
        self.prev[d]
    }

    /// Successor of `d` along its face.
    pub fn face_next(&self, d: Dart) -> Dart {
        self.next[reverse(d)]
    }

    /// Faces in order of their smallest dart; face 0 is the designated outer face.
    pub fn faces(&self) -> Vec<Face> {
        let nd = self.next.len();
        let mut seen = vec![false; nd];
        let mut out = Vec::new();
        for s in 0..nd {
            if seen[s] {
                continue;
            }
            let mut darts = Vec::new();
            let mut d = s;
            while !seen[d] {
                seen[d] = true;
                darts.push(d);
                d = self.face_next(d);
            }
            out.push(Face { darts });
        }
        out
    }

    /// `face_of[d]` is the index in `faces()` of the face containing dart `d`.
    pub fn face_index(&self) -> (Vec<Face>, Vec<usize>) {
        let faces = self.faces();
        let mut idx = vec![0; self.next.len()];
        for (i, f) in faces.iter().enumerate() {
            for &d in &f.darts {
                idx[d] = i;
            }
        }
        (faces, idx)
    }

    /// Euler characteristic check `V - E + F = 2` for a connected graph.
    pub fn is_planar_for(&self, g: &Graph) -> bool {
        if g.n() == 0 {
            return true;
        }
        if !g.is_connected() {
            return false;
        }
        let f = self.faces().len() as i64;
        let f = if g.m() == 0 { 1 } else { f };
        g.n() as i64 - g.m() as i64 + f == 2
    }

    /// Mirror image: every rotation reversed.
    pub fn mirrored(&self, g: &Graph) -> Embedding {
        let rot = self
            .rotation
            .iter()
            .map(|r| r.iter().rev().copied().collect())
            .collect();
        Embedding::new(g, rot).expect("mirror of a valid rotation is valid")
    }
}

/// Face-size histogram: `hist[k]` is the number of faces with `k` darts.
pub fn face_size_histogram(faces: &[Face]) -> Vec<usize> {
    let max = faces.iter().map(|f| f.len()).max().unwrap_or(0);
    let mut hist = vec![0; max + 1];
    for f in faces {
        hist[f.len()] += 1;
    }
    hist
}
