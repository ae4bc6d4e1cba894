use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("covariance is singular")]
    SingularCovariance,

    #[error("covariance is not positive semidefinite (min eigenvalue {0:e})")]
    NotPositiveSemidefinite(f64),

    #[error("innovation covariance is not positive definite")]
    InnovationNotPositiveDefinite,

    #[error("time step must be non-negative, got {0}")]
    NegativeTimeStep(f64),

    #[error("track initialisation requires t_new > t_old (got {t_new} <= {t_old})")]
    NonIncreasingTimes { t_new: f64, t_old: f64 },

    #[error("probability {0} is outside the supported range")]
    InvalidProbability(f64),

    #[error("degrees of freedom must be at least 1")]
    InvalidDegreesOfFreedom,

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{path}: {message}")]
    Io { path: String, message: String },

    #[error("malformed scenario: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
