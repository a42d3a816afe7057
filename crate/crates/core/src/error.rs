use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Qubit count, dimension or length outside what an operation accepts.
    #[error("size error: {0}")]
    Size(String),

    #[error("index error: {0}")]
    Index(String),

    /// Input violates a contract (non-unitary gate, bad weights, subnormalized state, ...).
    #[error("validation error: {0}")]
    Validation(String),

    /// A numerical invariant failed to hold after evaluation.
    #[error("check failed: {0}")]
    CheckFailed(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}
