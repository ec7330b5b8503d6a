use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operation undefined on the zero tensor: {0}")]
    ZeroTensor(&'static str),

    #[error("matrix is singular or too ill-conditioned (condition number {0:e})")]
    Singular(f64),

    #[error("non-finite entry in {0}")]
    NonFinite(&'static str),

    #[error("matrix is not hermitian (relative defect {0:e})")]
    NotHermitian(f64),

    #[error("type extraction failed: {0}")]
    TypeExtraction(String),

    #[error("invalid critical type: {0}")]
    InvalidType(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("semidirect extension rejected: {0}")]
    Semidirect(String),

    #[error("unknown catalog entry `{0}`")]
    UnknownCatalog(String),

    #[error("`{name}` expects {expected} parameter(s), got {found}")]
    Arity {
        name: String,
        expected: usize,
        found: usize,
    },

    #[error("parameter out of domain: {0}")]
    Domain(String),

    #[error("flow did not converge after {steps} steps (residual {residual:e})")]
    NotConverged { steps: usize, residual: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
