//! Implementation of the `pairrank` command line.
//!
//! The binary in `main.rs` is a thin wrapper: argument types and command
//! logic live here so integration tests can drive them directly.

pub mod cli;
pub mod commands;
pub mod ingest;
pub mod output;

use std::path::PathBuf;

use thiserror::Error;

/// Errors surfaced to the user with exit code 1.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}:{line}: {message}")]
    Malformed {
        path: String,
        line: usize,
        message: String,
    },

    #[error(transparent)]
    Core(#[from] pairrank::Error),

    #[error("cannot access {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, CliError>;
