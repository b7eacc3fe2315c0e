use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An input lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A matrix failed one of the density-matrix invariants.
    #[error("invalid density matrix ({invariant}): {detail}")]
    Validation {
        invariant: &'static str,
        detail: String,
    },

    #[error("configuration error: {0}")]
    Config(String),

    /// A self-check on a known result failed; points at a formula bug.
    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
