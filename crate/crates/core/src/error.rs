use thiserror::Error;

/// Errors raised by the exact and statistical layers.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different number fields ({0} vs {1})")]
    FieldMismatch(String, String),
    #[error("sign undecided after refining to {0} bits")]
    SignUndecided(u32),
    #[error("polynomials belong to different rings")]
    RingMismatch,
    #[error("exact division left a nonzero remainder: {0}")]
    InexactDivision(String),
    #[error("unsupported Coxeter diagram: {0}")]
    UnsupportedDiagram(String),
    #[error("budget exceeded: {what} (limit {limit})")]
    BudgetExceeded { what: String, limit: usize },
    #[error("degree extraction failed: {0}")]
    Factorization(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
