use thiserror::Error;

/// Errors raised by evaluation, bound queries and certification.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error("parity error: {0}")]
    Parity(String),
    #[error("mode error: {0}")]
    Mode(String),
    #[error("degree {0} exceeds the supported cap of {1}")]
    Cap(usize, usize),
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
