use thiserror::Error;

/// Harness failures, split by the exit code they map to.
#[derive(Debug, Error)]
pub enum HarnessError {
    /// Bad flags, config or parameters: exit code 2.
    #[error("config error: {0}")]
    Config(String),
    /// Numerical or I/O failure during a run: exit code 1.
    #[error("{0}")]
    Runtime(String),
}

pub type HarnessResult<T> = std::result::Result<T, HarnessError>;

impl HarnessError {
    pub fn config(msg: impl Into<String>) -> Self {
        HarnessError::Config(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config(_) => 2,
            HarnessError::Runtime(_) => 1,
        }
    }
}

impl From<specmeans::Error> for HarnessError {
    fn from(e: specmeans::Error) -> Self {
        use specmeans::Error as E;
        match e {
            E::InvalidGrid(_) | E::InvalidParameter(_) | E::Parse(_) | E::GridMismatch(_) | E::Unsupported(_) => {
                HarnessError::Config(e.to_string())
            }
            E::NonFinite(_) => HarnessError::Runtime(e.to_string()),
        }
    }
}

impl From<std::io::Error> for HarnessError {
    fn from(e: std::io::Error) -> Self {
        HarnessError::Runtime(format!("i/o: {e}"))
    }
}

impl From<csv::Error> for HarnessError {
    fn from(e: csv::Error) -> Self {
        HarnessError::Runtime(format!("csv: {e}"))
    }
}
