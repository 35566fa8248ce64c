//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A parameter violates a documented precondition or invariant.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The tridiagonal eigensolver failed to converge or was misused.
    #[error("eigensolver failure: {0}")]
    Eigensolver(String),

    /// An iterative procedure did not reach its tolerance within its budget.
    #[error("convergence failure: {0}")]
    Convergence(String),

    /// Evaluation requested too close to a pole of a perturbative formula.
    #[error("singularity: {0}")]
    Singularity(String),

    /// A root-finding bracket does not contain the target.
    #[error("bracket failure: {0}")]
    Bracket(String),

    /// Run-configuration parse or validation problem.
    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
