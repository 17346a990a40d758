use thiserror::Error;

/// Harness-level errors, split by the process exit code they map to:
/// configuration problems exit with 1, I/O problems with 2.
#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("validation failed: {0}")]
    Validation(String),
}

impl HarnessError {
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config(_) | HarnessError::Validation(_) => 1,
            HarnessError::Io(_) => 2,
        }
    }
}

impl From<std::io::Error> for HarnessError {
    fn from(e: std::io::Error) -> Self {
        HarnessError::Io(e.to_string())
    }
}

impl From<csv::Error> for HarnessError {
    fn from(e: csv::Error) -> Self {
        HarnessError::Io(e.to_string())
    }
}

impl From<flexea::Error> for HarnessError {
    fn from(e: flexea::Error) -> Self {
        match e {
            flexea::Error::Io(io) => HarnessError::Io(io.to_string()),
            other => HarnessError::Config(other.to_string()),
        }
    }
}

pub type Result<T> = std::result::Result<T, HarnessError>;
