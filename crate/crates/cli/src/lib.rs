//! Command-line front end: configuration, synthetic inputs, tasks and
//! output writers.

pub mod config;
pub mod error;
pub mod output;
pub mod synth;
pub mod tasks;

use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;

use config::{RunConfig, Task};
use error::CliError;

/// The JSON document written as `report.json`.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub task: Task,
    pub library_version: &'static str,
    /// Resolved configuration, defaults filled in.
    pub config: RunConfig,
    pub passed: bool,
    pub results: Value,
}

/// Resolves, runs and writes one task. Returns the report and the files
/// written.
pub fn run(config: RunConfig, out_dir: &Path) -> Result<(Report, Vec<PathBuf>), CliError> {
    let config = config.resolve()?;
    let out = tasks::execute(&config)?;
    let report = Report {
        task: config.task,
        library_version: rankone::VERSION,
        passed: out.passed,
        results: out.results,
        config,
    };
    let files = output::write_all(
        out_dir,
        &report,
        &out.artifacts,
        report.config.io.csv,
        report.config.io.plots,
    )?;
    Ok((report, files))
}
