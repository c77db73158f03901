use std::path::PathBuf;

use thiserror::Error;

use chowcalc_core::chowcalc::ChowError;

/// Exit codes of the `chowcalc` binary.
pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const INPUT_ERROR: i32 = 2;
    pub const HYPOTHESIS_FAILED: i32 = 3;
    pub const INTERNAL: i32 = 4;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {}: {message}", path.display())]
    Io { path: PathBuf, message: String },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("consistency error at {location}: {message}")]
    Consistency { location: String, message: String },
    #[error("cannot write {}: {message}", path.display())]
    Output { path: PathBuf, message: String },
    /// Inconsistent data discovered during the computation (`d∘d ≠ 0`, a
    /// failed cross-check).
    #[error("internal assertion failed: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Internal(_) => exit::INTERNAL,
            _ => exit::INPUT_ERROR,
        }
    }

    /// Core errors other than hypothesis failures, which become reports.
    pub(crate) fn from_core(e: ChowError) -> CliError {
        match e {
            ChowError::D1NotComplex { .. } | ChowError::Internal(_) | ChowError::Spectral(_) => {
                CliError::Internal(e.to_string())
            }
            other => CliError::Consistency {
                location: "input".into(),
                message: other.to_string(),
            },
        }
    }
}
