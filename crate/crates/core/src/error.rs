use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid dimension vector: {0}")]
    InvalidDimVector(String),

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("arithmetic error: {0}")]
    Arithmetic(String),

    #[error("series are not comparable: {0}")]
    Incomparable(String),

    #[error("truncation region too small: {0}")]
    Coverage(String),

    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("line {line}: {message}")]
    Semantic { line: usize, message: String },
}
