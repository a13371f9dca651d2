use thiserror::Error;

/// Errors raised by the algebra and verification layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum YrkError {
    #[error("backend mismatch: cannot mix exact and float scalars")]
    BackendMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("singular linear system")]
    Singular,
    #[error("evaluation at a pole: {0}")]
    Pole(String),
    #[error("pole collision: {0}")]
    PoleCollision(String),
    #[error("root finding failed: {0}")]
    RootFinding(String),
    #[error("function is not regular at infinity")]
    NotRegularAtInfinity,
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("unsupported Cartan data: {0}")]
    UnsupportedCartan(String),
    #[error("not a Laurent polynomial: {0}")]
    NotLaurent(String),
    #[error("not diagonalizable: {0}")]
    NotDiagonalizable(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Coarse classification used by the command line for exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Schema,
    MathDomain,
}

impl YrkError {
    pub fn class(&self) -> ErrorClass {
        match self {
            YrkError::Schema(_) | YrkError::Parse(_) | YrkError::BackendMismatch => ErrorClass::Schema,
            YrkError::InvalidRepresentation(_) | YrkError::UnsupportedCartan(_) => ErrorClass::Schema,
            _ => ErrorClass::MathDomain,
        }
    }
}

pub type Result<T> = std::result::Result<T, YrkError>;
