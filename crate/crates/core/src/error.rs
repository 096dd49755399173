use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the laboratory.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A size or degree exceeds a configured cap.
    #[error("range error: {0}")]
    Range(String),

    /// Inputs are individually valid but inconsistent with each other
    /// (for example a quadrature rule built for the wrong Gaussian rate).
    #[error("configuration error: {0}")]
    Config(String),

    /// An integrand produced a non-finite value at a quadrature node.
    #[error("non-finite integrand value at node #{index} (z = {z})")]
    NonFinite { index: usize, z: Complex64 },

    /// A measure file could not be parsed.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
