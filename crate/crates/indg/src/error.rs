use std::path::PathBuf;

/// Errors produced by the library, grouped by category so callers (notably
/// the CLI) can map them to distinct exit codes.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A precondition on an argument was violated (bad node id, malformed
    /// profile, missing hub, incomplete dependency network, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// An exhaustive search or exact solver was asked to exceed its
    /// configured budget.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// A text-format parse error, with the 1-based line it occurred on.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// File I/O failure, with the path that was being accessed.
    #[error("io error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// A constructed profile failed Nash-equilibrium verification. This is
    /// a hard error in the scenario runner: it would mean the constructor
    /// itself is wrong.
    #[error("equilibrium verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub fn capacity(msg: impl Into<String>) -> Self {
        Error::Capacity(msg.into())
    }

    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }

    /// Stable category name, used by the CLI for exit codes and by tests.
    pub fn category(&self) -> &'static str {
        match self {
            Error::InvalidArgument(_) => "argument",
            Error::Capacity(_) => "capacity",
            Error::Parse { .. } => "parse",
            Error::Io { .. } => "io",
            Error::Verification(_) => "verification",
        }
    }
}
