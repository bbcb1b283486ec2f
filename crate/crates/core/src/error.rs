use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid motif{}: {reason}", line.map(|l| format!(" (line {l})")).unwrap_or_default())]
    InvalidMotif { line: Option<usize>, reason: String },

    #[error("unknown built-in motif `{0}`")]
    UnknownMotif(String),

    #[error("unsupported motif class for {algorithm}: {reason}")]
    UnsupportedMotif {
        algorithm: &'static str,
        reason: String,
    },

    #[error("invalid matching order: {0}")]
    InvalidOrder(String),

    #[error("delta must be positive, got {0}")]
    InvalidDelta(i64),

    #[error("{name} must lie in (0, 1], got {value}")]
    InvalidProbability { name: &'static str, value: f64 },

    #[error("stream order violated at record {record}: timestamp {t} precedes {last}")]
    StreamOrder { record: u64, t: i64, last: i64 },

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}
