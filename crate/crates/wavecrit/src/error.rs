//! Error types shared across the crate.

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument fell outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A hypothesis required by an estimate or construction does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Supplied data is malformed or violates a sign/shape requirement.
    #[error("data error: {0}")]
    Data(String),

    /// Too few samples to perform a fit or assessment.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// A certification check failed at a concrete grid point.
    #[error("certification failed: {check} at r = {r}: {detail}")]
    Certification {
        check: &'static str,
        r: f64,
        detail: String,
    },

    /// An inconsistent run configuration was rejected before integration.
    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
