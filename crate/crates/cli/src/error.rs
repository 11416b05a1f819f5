use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed input: bad flags, JSON, preset strings or labels.
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid datum: {0}")]
    Validation(#[from] perdom_core::Error),
    /// A check that must hold on valid data failed.
    #[error("consistency failure: {0}")]
    Consistency(String),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Io { .. } => 1,
            CliError::Validation(_) => 2,
            CliError::Consistency(_) => 3,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
