use thiserror::Error;

/// Errors raised while reading inputs or combining incompatible objects.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at {pos}: expected {expected}, found {found}")]
    Syntax {
        pos: usize,
        expected: String,
        found: String,
    },
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
    #[error("duplicate proposition `{0}`")]
    DuplicateProp(String),
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error("output sets overlap on `{0}`")]
    OutputOverlap(String),
    #[error("invalid architecture: {0}")]
    Architecture(String),
    #[error("invalid automaton: {0}")]
    Automaton(String),
    #[error("invalid machine: {0}")]
    Machine(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn format_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Format {
        line,
        msg: msg.into(),
    }
}
