//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("division by zero in the cyclotomic field")]
    DivisionByZero,
    #[error("degenerate q-integer base (b - 1/b vanishes)")]
    DegenerateBase,
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("element is not in the span: {0}")]
    NotInSpan(String),
    #[error("unexpected solution space: {0}")]
    SolutionSpace(String),
    #[error("malformed input: {0}")]
    Format(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
