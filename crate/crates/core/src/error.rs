use thiserror::Error;

/// Errors produced by the bound evaluators, the region geometry and the simulator.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A probability vector or stochastic matrix failed validation.
    #[error("invalid distribution: {0}")]
    InvalidPmf(String),

    /// A channel description is malformed.
    #[error("invalid channel: {0}")]
    InvalidChannel(String),

    /// The caller violated a precondition (empty input, bad axis sets, delay outside the set, ...).
    #[error("usage error: {0}")]
    Usage(String),

    /// An exhaustive enumeration would exceed the configured state cap.
    #[error("size cap exceeded for {what}: {size} states (cap {cap})")]
    Capacity { what: String, size: u128, cap: u128 },

    /// A simulation configuration is inconsistent.
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Usage(msg.into()))
}
