use thiserror::Error;

/// Errors raised while building or evaluating flag-manifold geometry.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unsupported Lie type: {0}")]
    UnsupportedType(String),
    #[error("invalid node index {index} for rank {rank}")]
    InvalidNode { index: usize, rank: usize },
    #[error("flag manifold is a point (theta is the full set of simple roots)")]
    PointManifold,
    #[error("matrix realization unsupported for type {0}")]
    RealizationUnsupported(String),
    #[error("node {0} not minor-representable")]
    NotMinorRepresentable(usize),
    #[error("node {0} lies in theta")]
    NodeInTheta(usize),
    #[error("weights must be positive (got {0})")]
    NonPositiveWeight(f64),
    #[error("expected {expected} weights, got {got}")]
    WeightCount { expected: usize, got: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("matrix is not nilpotent within {0} powers")]
    NotNilpotent(usize),
    #[error("matrix is not Hermitian (relative deviation {0:e})")]
    NotHermitian(f64),
    #[error("metric is singular or not positive definite")]
    SingularMetric,
    #[error("type mismatch between parabolic data ({0}) and realization ({1})")]
    TypeMismatch(String, String),
}

impl Error {
    /// True for inputs the toolkit deliberately does not handle (spin nodes, exceptional realizations).
    pub fn is_unsupported_case(&self) -> bool {
        matches!(
            self,
            Error::RealizationUnsupported(_) | Error::NotMinorRepresentable(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
