use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HallError {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("period m = {m} is even; the periodic derived Hall algebra and its embedding require an odd period")]
    EvenPeriod { m: usize },

    #[error("resource limit exceeded: {what} needs {needed}, cap is {cap}")]
    ResourceLimit { what: &'static str, needed: u64, cap: u64 },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("division by zero")]
    DivisionByZero,
}

pub type Result<T> = std::result::Result<T, HallError>;
