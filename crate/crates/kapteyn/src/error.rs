use thiserror::Error;

/// Errors shared by the arithmetic, transform and evaluation layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input lies outside the range an operation is defined on.
    #[error("domain error: {0}")]
    Domain(String),

    /// A truncated sum hit its term budget before the tail criterion fired.
    #[error("no convergence within {max_terms} terms (last term {last_term:e})")]
    NonConvergence { max_terms: usize, last_term: f64 },

    /// Requested index is above the supported generation bound.
    #[error("index {index} exceeds the supported bound {bound}")]
    BoundExceeded { index: usize, bound: usize },

    /// Polynomial division was expected to be exact but left a remainder.
    #[error("polynomial division left a nonzero remainder")]
    InexactDivision,

    /// Numerator extraction found nonzero coefficients in the guard window.
    #[error("numerator extraction did not terminate: {0}")]
    NonTerminating(String),

    /// An exact-arithmetic operation was asked for a value it cannot represent.
    #[error("exact arithmetic: {0}")]
    Exactness(String),

    /// A coefficient record mixes exact strings and floating numbers.
    #[error("record mixes exact and floating coefficients")]
    MixedMode,

    /// Malformed input text or JSON.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
