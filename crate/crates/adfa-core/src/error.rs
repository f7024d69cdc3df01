//! Error type shared across the crate.

use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A precondition on an operation's arguments was violated.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The requested input file does not exist.
    #[error("file not found: {}", .0.display())]
    NotFound(PathBuf),

    /// The WAV file is valid RIFF but not 16-bit integer PCM.
    #[error("unsupported WAV format: {0}")]
    UnsupportedFormat(String),

    /// The file contents disagree with their own framing or headers.
    #[error("corrupt file: {0}")]
    Corrupt(String),

    /// The file does not start with the `ADFA` magic bytes.
    #[error("not an ADFA file (bad magic)")]
    NotAdfaFile,

    /// The file declares a format version newer than this build understands.
    #[error("unsupported ADFA format version {0}")]
    UnsupportedVersion(u32),

    /// A numerical cross-check exceeded its tolerance.
    #[error("verification failed: {0}")]
    Verification(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
