use std::io;

use thiserror::Error;

use crate::decomposition::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("prefix length {i} out of range 1..={max}")]
    PrefixOutOfRange { i: usize, max: usize },

    /// The instance is larger than the exponential algorithm is allowed to handle.
    #[error("{what}: size {size} exceeds cap {cap}")]
    Capacity {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    /// A König self-check failed: the supplied matching was not maximum.
    #[error("internal consistency error: {0}")]
    Inconsistent(String),

    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(Violation),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("invalid parameter: {0}")]
    Param(String),

    #[error("not found: {0}")]
    NotFound(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A program does not compute the formula it was checked against.
    #[error("equivalence error: {0}")]
    Equivalence(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
