use thiserror::Error;

/// Errors produced by norm construction, evaluation and the searches built on top.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid exponent p = {0}: a norm requires p >= 1")]
    InvalidP(f64),

    #[error("weight {index} is {value}, weights must be strictly positive")]
    NonPositiveWeight { index: usize, value: f64 },

    #[error("gram matrix is not symmetric at ({row}, {col})")]
    NonSymmetricMatrix { row: usize, col: usize },

    #[error("gram matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("vector norm {0:e} is too close to zero")]
    NearZeroVector(f64),

    #[error("coordinate {0} is not finite")]
    NonFiniteCoordinate(usize),

    #[error("vectors must have at least one coordinate")]
    EmptyVector,

    #[error("norm is not an inner-product norm")]
    NotInnerProductSpec,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
