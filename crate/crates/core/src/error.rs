use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("structural error: {0}")]
    Structural(String),
    #[error("tag mismatch: {0}")]
    TagMismatch(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("size bound exceeded: {0}")]
    Bound(String),
    #[error("cap exceeded: {0}")]
    Cap(String),
    #[error("invalid quotient: {0}")]
    InvalidQuotient(String),
    #[error("unknown letter {0:?}")]
    UnknownLetter(char),
    #[error("alphabet mismatch: {0}")]
    Alphabet(String),
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("criteria disagree: {0}")]
    Disagreement(String),
}

pub type Result<T> = std::result::Result<T, Error>;
