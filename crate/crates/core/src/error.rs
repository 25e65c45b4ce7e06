use std::path::PathBuf;

/// Errors surfaced by the library.
///
/// Invariant violations inside annotation documents are deliberately *not*
/// errors; they are collected into a [`crate::annotation::ValidationReport`]
/// so that a single broken reference never aborts a whole corpus run.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Prediction and gold inputs do not describe the same markables.
    #[error("misaligned inputs: {0}")]
    Misaligned(String),

    #[error("failed to read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("failed to parse {path} (line {line}): {source}")]
    Parse {
        path: PathBuf,
        line: usize,
        #[source]
        source: serde_json::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub fn misaligned(msg: impl Into<String>) -> Self {
        Error::Misaligned(msg.into())
    }

    /// Stable machine-readable category for error records.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidArgument(_) => "invalid-argument",
            Error::Misaligned(_) => "misaligned",
            Error::Io { .. } => "io",
            Error::Parse { .. } => "parse",
        }
    }
}
