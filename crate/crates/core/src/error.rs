use thiserror::Error;

/// Input and usage errors. Structural failures of the search procedures
/// (no certificate found, hypotheses not met) are reported as data in the
/// respective outcome types, not through this enum.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("uniformity must be at least 1, got {0}")]
    InvalidUniformity(usize),

    #[error("edge {edge:?} has {found} vertices, expected {expected}")]
    EdgeSize {
        edge: Vec<usize>,
        expected: usize,
        found: usize,
    },

    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("edge {0:?} repeats a vertex")]
    RepeatedVertex(Vec<usize>),

    #[error("duplicate edge {0:?}")]
    DuplicateEdge(Vec<usize>),

    #[error("expected a vertex set of size {expected}, got {found}")]
    WrongSetSize { expected: usize, found: usize },

    #[error("operation requires uniformity {expected}, hypergraph has {found}")]
    WrongUniformity { expected: usize, found: usize },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("instance with {n} vertices exceeds the {limit}-vertex limit of {what} (use force to override)")]
    TooLarge {
        what: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("absorption failed: {0}")]
    Absorption(String),
}

pub type Result<T> = std::result::Result<T, Error>;
