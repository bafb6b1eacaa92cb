//! Cubic 3-connected bipartite planar graphs: structural checks, constrained
//! Hamiltonian cycle search, named gadgets, colourings, reductions, generation
//! and a cycle-search encoding of 3-SAT.

pub mod canon;
pub mod checkers;
pub mod coloring;
pub mod embedding;
pub mod error;
pub mod fragments;
pub mod generation;
pub mod graph;
pub mod hamiltonicity;
pub mod io;
pub mod planarity;
pub mod sat;
pub mod steinitz;

pub use embedding::{Dart, Embedding, Face};
pub use error::{GraphError, Result};
pub use graph::{Edge, EdgeId, Graph, VertexId};
pub use canon::{canonical_key, CanonicalKey};
