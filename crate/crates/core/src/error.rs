use thiserror::Error;

/// Errors raised by polytope construction and the counting/verification routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty point set")]
    EmptyInput,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("ambient dimension {0} is unsupported (must be between 1 and {max})", max = crate::MAX_DIM)]
    UnsupportedDimension(usize),
    #[error("polytope is not full-dimensional (affine dimension {affine} in R^{ambient})")]
    NotFullDimensional { affine: usize, ambient: usize },
    #[error("not a proper face of the polytope")]
    NotAFace,
    #[error("precondition failed: degree is {found}, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("no full-dimensional sample after {0} attempts")]
    RetryLimit(usize),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
