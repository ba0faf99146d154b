use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("capability guard exceeded: {0}")]
    Capability(String),
    #[error("ħ-division needs valuation {needed}, found {found:?}")]
    Valuation { needed: usize, found: Option<usize> },
    #[error("chart mismatch: {0}")]
    ChartMismatch(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn malformed(msg: impl Into<String>) -> Error {
    Error::Malformed(msg.into())
}
