use std::io;
use std::path::{Path, PathBuf};

use thiserror::Error;

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    BadArgs(String),

    #[error(transparent)]
    Library(#[from] permqm::Error),

    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },

    #[error("{0}")]
    Format(String),

    #[error("{0} check(s) failed")]
    Verification(usize),
}

impl CliError {
    pub fn io(path: &Path, source: io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    /// 1 verification failure, 2 bad arguments, 3 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) => 1,
            CliError::BadArgs(_) | CliError::Library(_) => 2,
            CliError::Io { .. } | CliError::Format(_) => 3,
        }
    }
}
