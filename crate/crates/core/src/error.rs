use thiserror::Error;

use crate::exactnum::Rational;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// Nested enumeration would exceed the configured work limit.
    #[error("enumeration of {work} candidate vectors exceeds the guard limit {limit}")]
    Capacity { work: u128, limit: u128 },

    /// A certificate evaluated to a non-integer at a nonnegative argument.
    #[error("integrality violation at n = {n}: value {value}")]
    Integrality { n: i64, value: Rational },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
