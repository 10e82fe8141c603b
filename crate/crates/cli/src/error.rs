use std::io;

use coupled_tent::Error as CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Flags that parse but do not fit together.
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] CoreError),

    #[error("{context}: {source}")]
    Io { context: String, source: io::Error },

    #[error("malformed table: {0}")]
    Table(String),
}

impl CliError {
    pub const USAGE: i32 = 2;
    pub const RESOURCE: i32 = 3;
    pub const IO: i32 = 4;
    pub const NUMERICAL: i32 = 5;

    pub fn io(context: impl Into<String>, source: io::Error) -> Self {
        CliError::Io { context: context.into(), source }
    }

    /// Process exit status for this failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => Self::USAGE,
            CliError::Core(CoreError::ResourceGuard { .. }) => Self::RESOURCE,
            CliError::Core(CoreError::Corrupted { .. }) => Self::NUMERICAL,
            CliError::Core(_) => Self::USAGE,
            CliError::Io { .. } | CliError::Table(_) => Self::IO,
        }
    }
}
