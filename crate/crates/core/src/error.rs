use thiserror::Error;

/// Errors shared by the graph-level operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex index out of range in pair ({0}, {1})")]
    VertexOutOfRange(usize, usize),
    #[error("vertex {0} does not exist")]
    NoSuchVertex(usize),
    #[error("edge {0} does not exist")]
    NoSuchEdge(usize),
    #[error("cannot contract loop {0}")]
    ContractLoop(usize),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph too large for the adjacency-code key ({0} vertices, limit {1}); supply an embedding")]
    TooLargeForKey(usize, usize),
    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),
    #[error("{0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, GraphError>;
