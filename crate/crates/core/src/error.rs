use crate::graph::Vertex;

/// Errors raised by graph operations, solvers and lemma constructions.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("vertex {0} is not in the graph")]
    MissingVertex(Vertex),
    #[error("{0}{1} is not an edge")]
    NotAnEdge(Vertex, Vertex),
    #[error("exact solver limit: {what} on {size} vertices exceeds limit {limit}")]
    SolverLimit { what: &'static str, size: usize, limit: usize },
    #[error("exact solver limit in the ball around vertex {center}: {size} vertices exceeds limit {limit}")]
    BallLimit { center: Vertex, size: usize, limit: usize },
    #[error("graph6 decode error at byte {offset}: {message}")]
    Graph6 { offset: usize, message: String },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("chromatic precondition refuted: {0}")]
    ChromaticRefuted(String),
    #[error("trace step {index} is invalid: {reason}")]
    InvalidStep { index: usize, reason: String },
    #[error("parameters below threshold: {0}")]
    Threshold(String),
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
    #[error("unknown lemma id {id:?}; known ids: {known}")]
    UnknownLemma { id: String, known: String },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}

pub(crate) fn consistency(msg: impl Into<String>) -> Error {
    Error::Consistency(msg.into())
}
