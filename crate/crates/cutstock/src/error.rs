use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid pattern: {0}")]
    InvalidPattern(String),

    #[error("invalid solution: {0}")]
    InvalidSolution(String),

    #[error("dimension mismatch: instance has {expected} orders, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("pattern enumeration would exceed the cap of {cap} patterns")]
    EnumerationCapExceeded { cap: usize },

    #[error("search limits exceeded: {0}")]
    LimitsExceeded(String),

    #[error("instance is infeasible")]
    Infeasible,

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid generator parameters: {0}")]
    InvalidGenParams(String),

    #[error("order index {index} out of range (instance has {count} orders)")]
    OrderIndexOutOfRange { index: usize, count: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
