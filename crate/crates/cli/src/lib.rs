//! Harness around the core library: UCR-format ingestion, experiment
//! orchestration with deterministic results files, collation into
//! per-metric tables and the command-line surface.

pub mod cli;
pub mod collate;
pub mod experiment;
pub mod results;
pub mod ucr;

use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("unsupported dataset {path}: {reason}")]
    Unsupported { path: PathBuf, reason: String },
    #[error("refusing to overwrite {0} (pass --overwrite to allow)")]
    OverwriteRefused(PathBuf),
    #[error("malformed results file {path}: {message}")]
    Results { path: PathBuf, message: String },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] tscl_core::TsclError),
}

pub type Result<T> = std::result::Result<T, CliError>;
