use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("ratio must be positive, got {0}")]
    NonPositiveRatio(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("unbounded region")]
    Unbounded,
    #[error("budget exhausted after {0} steps")]
    Budget(u64),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
