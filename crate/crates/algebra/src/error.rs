use thiserror::Error;

use crate::budget::BudgetExceeded;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable '{name}' at position {position}")]
    UnknownVariable { name: String, position: usize },
    #[error("invalid variable name '{0}'")]
    InvalidVariable(String),
    #[error("duplicate variable '{0}'")]
    DuplicateVariable(String),
    #[error("polynomials live in different rings: [{left}] vs [{right}]")]
    RingMismatch { left: String, right: String },
    #[error("zero vector has no order")]
    ZeroVector,
    #[error("division by zero")]
    DivisionByZero,
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}
