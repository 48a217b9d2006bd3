use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("invalid normalisation: {0}")]
    InvalidNormalisation(String),
    #[error("extended matrix B is singular (det B = 0)")]
    SingularB,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("precondition failed: {reason}")]
    Precondition { reason: String, witness: Option<String> },
    #[error("ideal is not peripheral: {0}")]
    NotPeripheral(String),
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
