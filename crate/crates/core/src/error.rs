use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero is not a valid input here (naturals start at 1)")]
    Zero,

    /// A standing hypothesis of a definition does not hold; names the failed
    /// inequality.
    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("index {index} out of range (length {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid cuts: {0}")]
    BadCuts(String),

    #[error("position {0} lies beyond the end of the explicit prefix")]
    OutOfPrefix(usize),

    #[error("empty word")]
    EmptyWord,

    #[error("factorisation does not match the word: first mismatch at position {position}")]
    NotAFactorisation { position: usize },

    #[error("invalid morphism: {0}")]
    Morphism(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("colouring {colouring} is not defined on {what}")]
    Undefined { colouring: String, what: String },

    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    #[error("{0}")]
    Invalid(String),
}
