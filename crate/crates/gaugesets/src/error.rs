use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid gauge: {0}")]
    InvalidGauge(String),
    #[error("invalid sample: {0}")]
    InvalidSample(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("unknown atom '{0}'")]
    UnknownAtom(String),
    #[error("format error: {0}")]
    Format(String),
    #[error("no half-space representation available for a body in dimension {0}")]
    MissingHRep(usize),
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
