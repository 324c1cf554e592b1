use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Arguments fall outside the range where a formula is defined.
    #[error("domain error: {0}")]
    Domain(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("grid resolution does not divide the width of axis {axis}")]
    GridNotDivisible { axis: usize },
    #[error("invalid rational literal {0:?}")]
    ParseRational(String),
    /// An audit could not be run because an input entry is missing.
    #[error("inconclusive: {0}")]
    Missing(String),
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
