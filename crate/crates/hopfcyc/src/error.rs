use thiserror::Error;

use crate::scalar::Field;

#[derive(Debug, Error)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("dimension budget exceeded: need {needed}, budget {budget}")]
    Budget { needed: usize, budget: usize },

    #[error("rewrite step budget exhausted after {0} steps (possible non-termination)")]
    StepBudget(usize),

    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("unknown symbol `{symbol}` at {line}:{col}")]
    UnknownSymbol {
        symbol: String,
        line: usize,
        col: usize,
    },

    #[error("rule at line {line} violates the monomial order: {msg}")]
    OrderViolation { line: usize, msg: String },

    #[error("presentation is not finite-dimensional: normal-form basis exceeded {0} monomials")]
    NotFiniteDimensional(usize),

    #[error("structure violation: {0}")]
    Structure(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }
    pub fn structure(msg: impl Into<String>) -> Self {
        Error::Structure(msg.into())
    }
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
