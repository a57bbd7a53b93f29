//! Error types shared across the crate.

use thiserror::Error;

/// Crate-wide error type.
///
/// Fatgraph validation failures carry a distinct variant per violated
/// invariant so callers (and tests) can tell them apart.
#[derive(Debug, Error)]
pub enum Error {
    #[error("tau0 and tau1 must be permutations of the same dart set")]
    MalformedPermutation,
    #[error("dart count must be even (two darts per edge)")]
    OddDartCount,
    #[error("tau1 has a fixed point at dart {0}")]
    Tau1FixedPoint(usize),
    #[error("tau1 is not an involution at dart {0}")]
    Tau1NotInvolution(usize),
    #[error("vertex cycle of length {len} at dart {dart}: valency must be > 2")]
    ShortVertexCycle { dart: usize, len: usize },
    #[error("fatgraph is disconnected")]
    Disconnected,
    #[error("V - E + n = {chi} does not give a nonnegative integer genus")]
    BadGenus { chi: i64 },
    #[error("boundary labels must biject onto 1..={n}")]
    BadBoundaryLabels { n: usize },

    #[error("unstable type (g,n) = ({g},{n}): need 2g - 2 + n > 0")]
    Unstable { g: usize, n: usize },

    #[error("duplicate interpolation abscissa {0}")]
    DuplicateNode(String),
    #[error("interpolation needs at least one node")]
    EmptyNodes,
    #[error("tensor grid is not a full product with {expected} nodes per axis")]
    IncompleteGrid { expected: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal consistency failure: {0}")]
    Inconsistency(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("refused: {0}")]
    Refusal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
