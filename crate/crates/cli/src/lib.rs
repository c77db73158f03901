//! Configuration loading, orchestration and reporting for the `chowcalc`
//! binary.

pub mod config;
pub mod error;
pub mod report;
mod run;

pub use config::{load_config, parse_config, Config, Input, Mode};
pub use error::{exit, CliError};
pub use report::{Report, Status};
pub use run::{dot, run};

use std::path::{Path, PathBuf};

/// Output destinations; command-line flags override the config.
#[derive(Clone, Debug, Default)]
pub struct Outputs {
    pub report: Option<PathBuf>,
    pub json: Option<PathBuf>,
    pub dot: Option<PathBuf>,
}

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::Output {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

/// Loads, runs and writes every requested output. Returns the exit code and
/// the text report when no report path was given.
pub fn execute(config_path: &Path, flags: &Outputs) -> Result<(i32, Option<String>), CliError> {
    let config = load_config(config_path)?;
    let report = run(&config)?;
    let pick = |flag: &Option<PathBuf>, cfg: &Option<PathBuf>| flag.clone().or_else(|| cfg.clone());
    let text = report.render_text();
    let shown = match pick(&flags.report, &config.output.report) {
        Some(p) => {
            write(&p, &text)?;
            None
        }
        None => Some(text),
    };
    if let Some(p) = pick(&flags.json, &config.output.json) {
        write(&p, &report.to_json())?;
    }
    if let Some(p) = pick(&flags.dot, &config.output.dot) {
        match dot(&config)? {
            Some(d) => write(&p, &d)?,
            None => log::warn!("smooth-2res mode has no dual complex; no DOT file written"),
        }
    }
    let code = match report.status {
        Status::Ok => exit::SUCCESS,
        Status::HypothesisFailed => exit::HYPOTHESIS_FAILED,
    };
    Ok((code, shown))
}
