use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("not contained: {0}")]
    Containment(String),
    #[error("size cap exceeded: {0}")]
    Size(String),
    #[error("incompatible operands: {0}")]
    Compatibility(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("undecided: {0}")]
    Undecided(String),
    #[error("field too small: {0}")]
    FieldTooSmall(String),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
