use std::path::{Path, PathBuf};

use halfexp_core::ErrorKind;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] halfexp_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}: {msg}", path.display())]
    Unreadable { path: PathBuf, msg: String },
    #[error("{0} verification suite(s) failed")]
    SuitesFailed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) => match e.kind() {
                ErrorKind::Domain => 2,
                ErrorKind::Convergence => 3,
            },
            CliError::Usage(_) => 2,
            CliError::Io { .. } | CliError::Unreadable { .. } => 4,
            CliError::SuitesFailed(_) => 1,
        }
    }

    pub fn io(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
        move |source| CliError::Io { path: path.to_path_buf(), source }
    }

    pub fn unreadable(path: &Path, msg: impl ToString) -> CliError {
        CliError::Unreadable { path: path.to_path_buf(), msg: msg.to_string() }
    }
}

pub type CliResult<T> = Result<T, CliError>;
