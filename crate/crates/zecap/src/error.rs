//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A parameter is outside the range an operation is defined for.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Two sequences that must have equal length do not.
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    /// A binary sequence was required.
    #[error("sequence is not binary")]
    NotBinary,

    /// A simplex point's bound does not match the requested word length.
    #[error("simplex bound mismatch: point has bound {bound} but n={n}, W={w} requires {required}")]
    BoundMismatch {
        bound: u32,
        n: usize,
        w: usize,
        required: i64,
    },

    /// Indicator weight and number of particle types disagree.
    #[error("indicator weight {weight} does not match {types} particle types")]
    WeightMismatch { weight: usize, types: usize },

    /// Requested construction does not exist for these parameters.
    #[error("infeasible construction: {0}")]
    Infeasible(String),

    /// A brute-force instance exceeds the configured enumeration limits.
    #[error("instance too large: {0}")]
    GuardExceeded(String),

    /// A received word is not consistent with any codeword's output set.
    #[error("output inconsistent with the code: {0}")]
    InconsistentOutput(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
