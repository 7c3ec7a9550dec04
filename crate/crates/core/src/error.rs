use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} is outside 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}: a bracket needs two distinct atoms")]
    Loop(usize),
    #[error("vertex indices start at 1")]
    ZeroVertex,
    #[error("edge {0} does not occur in the scheme")]
    EdgeNotFound(String),
    #[error("edges {0} and {1} cross")]
    Crossing(String, String),
    #[error("edges {0} and {1} do not cross; the quadratic rewrite does not apply")]
    NotCrossing(String, String),
    #[error("vertex count mismatch: {0} vs {1}")]
    VertexCountMismatch(usize, usize),
    #[error("formula requires n >= {min}, got n = {n}")]
    Domain { n: usize, min: usize },
    #[error("matrix has determinant {0}, expected 1")]
    NotUnimodular(i64),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("rewrite fuel exhausted after {0} steps")]
    FuelExhausted(u64),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Errors from the bracket-polynomial and diagram text grammars. Positions are
/// byte offsets into the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("index {index} at position {pos} is outside 1..={n}")]
    IndexOutOfRange { pos: usize, index: usize, n: usize },
    #[error("loop bracket [{index},{index}] at position {pos}")]
    LoopBracket { pos: usize, index: usize },
}
