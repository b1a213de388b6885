use thiserror::Error;

/// Errors raised by state constructors, operators and measures.
#[derive(Debug, Error)]
pub enum FockError {
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("degenerate state: {0}")]
    DegenerateState(String),
    #[error("numerical health: {0}")]
    NumericalHealth(String),
}

pub type Result<T> = std::result::Result<T, FockError>;
