use thiserror::Error;

/// Errors raised by the algebra layers and the serialization boundary.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("not a unit: {0}")]
    NotUnit(String),
    #[error("precision insufficient: {0}")]
    Precision(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("not applicable in characteristic {0}")]
    Characteristic(u64),
    #[error("malformed input: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn precision(msg: impl Into<String>) -> Self {
        Error::Precision(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
