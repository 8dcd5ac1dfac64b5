//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors raised by constructors, formula evaluators and searches.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The number of parts does not admit the requested operation.
    #[error("invalid arity: {0}")]
    InvalidArity(String),

    /// A part size was zero (all sizes must be positive integers).
    #[error("invalid size: {0}")]
    InvalidSize(String),

    /// Parameters fall outside the hypothesis range of the requested value.
    #[error("out of range: {0}")]
    OutOfRange(String),

    /// An edge operation referenced a pair that is not a current edge.
    #[error("not an edge: ({0}, {1})")]
    NotAnEdge(u32, u32),

    /// Integer arithmetic would exceed the supported exact range.
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    /// A search exhausted its node or time budget before reaching a
    /// conclusion.
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    /// Malformed edge-list input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
