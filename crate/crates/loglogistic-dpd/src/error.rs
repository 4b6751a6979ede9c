//! Error type shared by the whole crate.

use thiserror::Error;

/// Errors produced by distribution evaluation, estimation and I/O.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A token in a data file could not be parsed as a number.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A data value violates the positivity requirement.
    #[error("data error at line {line}: {message}")]
    Data { line: usize, message: String },

    /// The requested raw moment does not exist for this shape parameter.
    #[error("moment of order {order} does not exist for shape beta = {beta} (requires order < beta)")]
    MomentUndefined { order: u32, beta: f64 },

    /// The sample cannot support the requested estimator.
    #[error("degenerate sample: {0}")]
    DegenerateSample(String),

    /// A matrix needed for the asymptotic covariance is singular or
    /// numerically unusable.
    #[error("ill-conditioned matrix: {0}")]
    IllConditioned(String),

    /// Invalid run configuration (bad flag combination or value).
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
