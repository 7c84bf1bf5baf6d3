use std::io;
use std::path::PathBuf;

use diter_core::SchemeKind;

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },

    #[error("{}:{line}: {msg}", path.display())]
    Parse { path: PathBuf, line: usize, msg: String },

    #[error("{}: {source}", path.display())]
    Csv { path: PathBuf, source: csv::Error },

    /// A well-formed input that does not fit the problem, e.g. a vector of
    /// the wrong length.
    #[error("{context}: {source}")]
    Input { context: String, source: diter_core::Error },

    #[error(transparent)]
    Core(#[from] diter_core::Error),

    #[error("{0}")]
    Usage(String),

    #[error("{scheme} stopped after {steps} steps with residual {residual:e}, above tolerance {tol:e}")]
    NotConverged {
        scheme: SchemeKind,
        steps: u64,
        residual: f64,
        tol: f64,
    },
}

impl CliError {
    /// 0 success, 1 usage, 2 bad input, 3 no convergence.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Core(diter_core::Error::UnknownCase(_)) => 1,
            CliError::NotConverged { .. } => 3,
            _ => 2,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn parse(path: impl Into<PathBuf>, line: usize, msg: impl Into<String>) -> Self {
        CliError::Parse {
            path: path.into(),
            line,
            msg: msg.into(),
        }
    }
}
