//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of an operation.
    #[error("domain error: {what} = {value} is outside the domain")]
    Domain { what: &'static str, value: f64 },

    /// An input that must be finite is NaN or infinite.
    #[error("non-finite input: {what}")]
    NonFinite { what: &'static str },

    /// Vector or matrix dimensions do not match the operation's contract.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// The input vectors do not span a subspace of full rank.
    #[error("degenerate subspace: input vectors are linearly dependent")]
    DegenerateSubspace,

    /// A normal vector that must have unit length does not.
    #[error("normal vector is not unit length: |norm - 1| = {deviation:e}")]
    NonUnitNormal { deviation: f64 },

    /// A sample operation was called on an empty sample.
    #[error("empty sample")]
    EmptySample,

    /// A sample value violates the operation's support constraint.
    #[error("invalid sample: {0}")]
    InvalidSample(&'static str),

    /// Experiment configuration failed validation.
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors that indicate bad user input (CLI exit code 1)
    /// rather than a runtime or I/O failure (exit code 2).
    pub fn is_validation(&self) -> bool {
        !matches!(self, Error::Io(_) | Error::Json(_))
    }
}
