use thiserror::Error;

/// Errors produced by tree ingestion, geometry and embedding.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("not a tree: {0}")]
    NotATree(String),

    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("point is not a corner of the box")]
    NotACorner,

    #[error("duplicate points: labels {0} and {1} share a position")]
    DuplicatePoints(u64, u64),

    #[error("internal invariant violated at vertex {vertex}: {message}")]
    InternalInvariantViolation { vertex: u64, message: String },

    #[error("malformed JSON: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
