use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot differentiate a series truncated at order 0")]
    DerivativeOfOrderZero,
    #[error("inner series of a composition must have zero constant term")]
    NonzeroConstantTerm,
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
