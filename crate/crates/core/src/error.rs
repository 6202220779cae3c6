use thiserror::Error;

/// Error type shared by every module in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown point label: {0}")]
    UnknownPoint(String),

    #[error("invalid rational `{input}`: {reason}")]
    InvalidRational { input: String, reason: String },

    #[error("invalid point: {0}")]
    InvalidPoint(String),

    #[error("invalid space: {0}")]
    InvalidSpace(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported radius: {0}")]
    UnsupportedRadius(String),

    #[error("level mismatch: {0}")]
    LevelMismatch(String),

    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    #[error("unknown suite: {0}")]
    UnknownSuite(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
