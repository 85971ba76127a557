use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("rewriting did not terminate within {0} steps")]
    RewriteBudget(usize),
    #[error("parameter {0} cannot be specialized to {1}")]
    BadSpecialization(String, String),
    #[error("complex is inconsistent: d_out after d_in is non-zero")]
    NotAComplex,
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("{0}")]
    Compute(String),
    #[error("preset not found: {0}")]
    PresetNotFound(String),
}

pub type Result<T> = std::result::Result<T, Error>;
