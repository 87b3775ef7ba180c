use thiserror::Error;

/// Errors surfaced by the solver suite.
#[derive(Debug, Error)]
pub enum OctError {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("refused: instance has {n} vertices, oracle cap is {cap}")]
    Refused { n: usize, cap: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("external solver integration error: {message}")]
    Integration { message: String, raw: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl OctError {
    pub fn parse(line: usize, message: impl Into<String>) -> Self {
        OctError::Parse {
            line,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, OctError>;
