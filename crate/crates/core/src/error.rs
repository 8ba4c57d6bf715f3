use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("objective dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),

    #[error("operation requires dimension {required}, got {got}")]
    WrongDimension { required: usize, got: usize },

    #[error("empty input")]
    Empty,

    #[error("non-finite coordinate at point {point}, index {index}")]
    NonFinite { point: usize, index: usize },

    #[error("reference point is not strictly dominated by front point {0}")]
    ReferenceNotDominated(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("standard deviation must be positive and finite, got {0}")]
    InvalidSigma(f64),

    #[error("correlation matrix is not positive definite (duplicate inputs?)")]
    NotPositiveDefinite,

    #[error("duplicate training inputs at rows {0} and {1}")]
    DuplicateInput(usize, usize),

    #[error("objective evaluation failed: {0}")]
    Evaluation(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
