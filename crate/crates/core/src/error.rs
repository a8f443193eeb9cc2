use thiserror::Error;

pub type Result<V> = std::result::Result<V, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("covariance matrix not positive definite even with jitter {jitter:e}")]
    SingularModel { jitter: f64 },
    #[error("point {0} is already in the design")]
    DuplicatePoint(String),
    #[error("candidate set is empty")]
    EmptyCandidates,
    #[error("objective evaluation failed: {0}")]
    Objective(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("benchmark failed: {0}")]
    Benchmark(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    /// True for failures of the numerical model itself (as opposed to bad
    /// input or configuration).
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::SingularModel { .. } | Error::Benchmark(_))
    }
}
