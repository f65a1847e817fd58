use thiserror::Error;

use crate::amplitudes::AmplitudeKind;

#[derive(Debug, Error)]
pub enum ErcdError {
    #[error("mass must be positive, got {0}")]
    NonPositiveMass(f64),
    #[error("amplitude kind mismatch: expected {expected:?}, found {found:?}")]
    KindMismatch {
        expected: AmplitudeKind,
        found: AmplitudeKind,
    },
    #[error("unknown amplitude kind `{0}`")]
    UnknownKind(String),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("field is not a smooth test field: boundary magnitude {0:e} exceeds 1e-8")]
    NotSmooth(f64),
    #[error("grid mismatch between operands")]
    GridMismatch,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, ErcdError>;
