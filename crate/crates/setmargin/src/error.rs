//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by parsing, configuration, data handling and numerics.
#[derive(Debug, Error)]
pub enum Error {
    /// A malformed input line, with its 1-based line number.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// Invalid configuration (architecture, hyperparameters, protocol shape).
    #[error("config error: {0}")]
    Config(String),

    /// Data does not satisfy a protocol precondition (too few sessions,
    /// missing subject, empty gallery, ...).
    #[error("data error: {0}")]
    Data(String),

    /// A numerical failure (non-finite loss or gradient).
    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("report serialization failed: {0}")]
    Serialize(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code for the CLI: 2 config, 3 data, 4 numerical.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::Dimension { .. } => 2,
            Error::Parse { .. } | Error::Data(_) | Error::Io(_) | Error::Serialize(_) => 3,
            Error::Numerical(_) => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
