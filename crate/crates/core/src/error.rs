//! Error type shared by every module.

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Every failure mode of the library. Variants carry enough context to be
/// reported verbatim on the command line.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("unknown edge {0}")]
    UnknownEdge(usize),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("stability interval endpoint attained: {0}")]
    NondegeneracyViolation(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("no pushforward rule for term {0}")]
    NoRule(String),
    #[error("unsupported relation {0}")]
    UnsupportedRelation(String),
    #[error("stability family is degenerate or not semismall: {0}")]
    DegenerateFamily(String),
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
}
