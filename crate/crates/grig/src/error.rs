use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The sequence specification violates its validation mode.
    #[error("invalid sequence spec: {0}")]
    InvalidSpec(String),

    /// A length, level or partial sum left the guarded integer/memory range.
    #[error("depth exceeded: {0}")]
    DepthExceeded(String),

    /// A word-level query was made for a word outside the language.
    #[error("not a factor: {0}")]
    NotAFactor(String),

    /// The closed-form complexity evaluator was asked below its valid range.
    #[error("complexity formula out of range: n = {n} must exceed M(1) = {m1}")]
    OutOfRange { n: u64, m1: u64 },

    /// The repetitive-function bracket did not hold; never silently clamped.
    #[error("repetitive-function bracket failed: {0}")]
    BracketFailed(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unknown check id: {0}")]
    UnknownCheck(String),

    #[error("invalid argument: {0}")]
    InvalidArg(String),
}
