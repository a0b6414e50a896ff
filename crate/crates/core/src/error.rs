use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Two operands are indexed by different vertex lists.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// Structurally invalid input, e.g. duplicate labels or a negative weight.
    #[error("invalid input: {0}")]
    Input(String),

    /// A graph or gluing file could not be parsed.
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("cache format version {found} is not supported (expected {expected})")]
    CacheVersion { found: u64, expected: u64 },

    #[error("corrupt cache: {0}")]
    CorruptCache(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }

    pub(crate) fn from_json(err: serde_json::Error) -> Self {
        Error::parse(
            format!("line {}, column {}", err.line(), err.column()),
            err.to_string(),
        )
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
