use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("property violation: {0}")]
    Violation(String),
    #[error("precision exhausted: {0}")]
    Precision(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Violation(_) | CliError::Internal(_) => 1,
            CliError::Invalid(_) | CliError::Io(_) => 2,
            CliError::Precision(_) => 3,
        }
    }
}

impl From<lehmer_core::Error> for CliError {
    fn from(e: lehmer_core::Error) -> Self {
        use lehmer_core::Error as E;
        match e {
            E::InvalidInput(_) | E::InfiniteValuation | E::UnsupportedLevel(_) => CliError::Invalid(e.to_string()),
            E::PrecisionExhausted { .. } => CliError::Precision(e.to_string()),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Invalid(msg.into()))
}
