use std::fmt;

use thiserror::Error;

/// Which side of a bipartite graph an id refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    U,
    W,
    Z,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::U => f.write_str("U"),
            Side::W => f.write_str("W"),
            Side::Z => f.write_str("Z"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("{side}-vertex id {id} out of range (partition size {bound})")]
    IdOutOfRange { side: Side, id: usize, bound: usize },

    #[error("delta must lie in [0, 1], got {0}")]
    InvalidDelta(f64),

    #[error("edge probability must lie in [0, 1], got {0}")]
    InvalidProbability(f64),

    #[error("edge count {m_hat} exceeds n^2 = {max}")]
    TooManyEdges { m_hat: usize, max: usize },

    #[error("invalid clique record: {0}")]
    InvalidClique(String),

    /// Raised when an algorithm's own bookkeeping disagrees with the graph.
    #[error("internal consistency violation: {0}")]
    Consistency(String),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// A malformed graph file. Every variant carries the 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: malformed header: {reason}")]
    MalformedHeader { line: usize, reason: String },

    #[error("line {line}: malformed record: {reason}")]
    MalformedRecord { line: usize, reason: String },

    #[error("line {line}: {side}-vertex id {id} out of range (partition size {bound})")]
    IdOutOfRange {
        line: usize,
        side: Side,
        id: usize,
        bound: usize,
    },

    #[error("line {line}: duplicate edge ({a}, {b})")]
    DuplicateEdge { line: usize, a: usize, b: usize },

    #[error("line {line}: header declares {declared} edges but {found} were read")]
    EdgeCountMismatch {
        line: usize,
        declared: usize,
        found: usize,
    },

    #[error("line {line}: structure error: {reason}")]
    Structure { line: usize, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
