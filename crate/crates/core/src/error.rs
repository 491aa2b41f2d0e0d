use thiserror::Error;

/// Errors reported by the planners and domain operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("center of gravity of an empty state is undefined")]
    EmptyState,
    #[error("{0} must not be empty")]
    EmptyInput(&'static str),
    #[error("lengths must be positive, got {0}")]
    NonPositiveLength(String),
    #[error("order is not a permutation of 0..{len}: {reason}")]
    NotAPermutation { len: usize, reason: String },
    #[error("all points coincide; the minimum pairwise distance is zero")]
    CoincidentPoints,
    #[error(
        "instance has {n} points, exact solving is capped at {limit}; use the heuristic planner"
    )]
    TooLarge { n: usize, limit: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unsupported system: {0}")]
    Unsupported(String),
}

/// A string that is neither a fraction `p/q` nor a finite decimal.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("not an exact rational: {0:?}")]
pub struct ParseRationalError(pub String);

pub type Result<T, E = Error> = std::result::Result<T, E>;
