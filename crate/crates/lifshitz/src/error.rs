//! Error types shared across the engine.

use thiserror::Error;

/// Errors produced by the engine.
///
/// `Domain`, `Ingest` and `Config` describe bad inputs (CLI exit code 2);
/// `Numeric` describes a computation that failed to converge (exit code 1).
#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A data file could not be ingested.
    #[error("ingest error{}: {msg}", row.map(|r| format!(" (row {r})")).unwrap_or_default())]
    Ingest {
        msg: String,
        /// 1-based data row number, when known.
        row: Option<usize>,
    },

    /// A quadrature or summation failed to reach its tolerance.
    #[error("numeric error: {0}")]
    Numeric(String),

    /// A scenario configuration is invalid.
    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn ingest(msg: impl Into<String>, row: Option<usize>) -> Self {
        Error::Ingest {
            msg: msg.into(),
            row,
        }
    }

    pub fn numeric(msg: impl Into<String>) -> Self {
        Error::Numeric(msg.into())
    }

    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    /// CLI exit code for this error: 1 for numeric failures, 2 for bad input.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Numeric(_) => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
