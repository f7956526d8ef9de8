use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("valuation of zero is infinite")]
    InfiniteValuation,
    #[error("level {0} needs a compatible field tower (only 1 and prime levels are supported)")]
    UnsupportedLevel(u32),
    #[error("precision exhausted after {bits} bits: {detail}")]
    PrecisionExhausted { bits: u64, detail: String },
    #[error("sector boundary passes through a root disk; try start angle {suggestion}")]
    BoundaryAmbiguous { suggestion: f64 },
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
