use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("solution is not unique: {0}")]
    NotUnique(String),
    #[error("variable mismatch: {0}")]
    VariableMismatch(String),
    #[error("element is not invariant: {0}")]
    NotInvariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
