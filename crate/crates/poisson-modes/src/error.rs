use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point outside the domain: {0}")]
    Domain(String),
    #[error("invalid parameters: {0}")]
    Parameter(String),
    #[error("series does not terminate: {0}")]
    NonTerminating(String),
    #[error("gamma pole without cancellation: {0}")]
    Pole(String),
    #[error("indeterminate configuration: {0}")]
    Indeterminate(String),
    #[error("mixed powers of pi cannot be added")]
    MixedPiPower,
    #[error("numerical failure: {0}")]
    Numeric(String),
}

pub type Result<T> = std::result::Result<T, Error>;
