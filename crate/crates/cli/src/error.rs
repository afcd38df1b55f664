use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    /// `line`/`column` are 1-based positions in the input file.
    #[error("{path}:{line}:{column}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error(transparent)]
    Core(#[from] evoalg::Error),
}

impl CliError {
    /// 2 for unreadable or malformed input, 3 for a violated precondition.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Parse { .. } | CliError::Argument(_) => 2,
            CliError::Core(evoalg::Error::MalformedRational { .. })
            | CliError::Core(evoalg::Error::ZeroDenominator(_)) => 2,
            CliError::Core(_) => 3,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
