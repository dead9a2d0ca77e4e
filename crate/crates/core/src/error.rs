//! Error type shared by the whole crate.

use thiserror::Error;

/// Crate-wide error type.
///
/// The variants map onto the three failure classes the batch CLI
/// distinguishes: I/O problems, malformed input files, and data that
/// violates an invariant (dimensions, pixel ranges, non-finite values).
#[derive(Debug, Error)]
pub enum Error {
    /// Data violates a type invariant (NaN channel, negative radiance, ...).
    #[error("validation error: {0}")]
    Validation(String),

    /// Two images (or an image and a map) that must be aligned are not.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A byte stream does not parse as the expected file format.
    #[error("{format} format error: {reason}")]
    Format {
        format: &'static str,
        reason: String,
    },

    /// Underlying I/O failure.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn format(format: &'static str, reason: impl Into<String>) -> Self {
        Error::Format {
            format,
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
