//! Reproducible scenario runs.
//!
//! Every command fans seeds out to a rayon pool, collects the per-seed
//! outputs in seed order and only then writes files, so data files depend on
//! the config and seeds alone. Wall-clock times go to `manifest.txt`, which
//! is the one file excluded from the byte-identical guarantee.

mod commands;
mod config;
mod manifest;

use std::path::PathBuf;

pub use commands::Command;
pub use config::{
    AnalysisSection, AtomSpec, BudgetSection, MeasureSection, Scenario, ScenarioConfig,
    ScenarioSection,
};
pub use manifest::{RunManifest, RunRecord, MANIFEST_FILE};

use crate::error::{Error, Result};

/// Global options shared by every command.
#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub config: Option<PathBuf>,
    /// Overrides the config's seed list when nonempty.
    pub seeds: Vec<u64>,
    /// Overrides the config's output directory.
    pub out: Option<PathBuf>,
    pub threads: Option<usize>,
}

/// What a command produced.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub out_dir: PathBuf,
    pub manifest: RunManifest,
    /// Human-readable summary for stdout.
    pub summary: String,
    pub exit_code: i32,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Process exit code for an error.
pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Config { .. }
        | Error::InvalidDescriptor { .. }
        | Error::EmptyInput(_)
        | Error::Parse(_) => EXIT_CONFIG,
        _ => EXIT_FAILURE,
    }
}

pub fn run(command: &Command, options: &RunOptions) -> Result<RunOutcome> {
    commands::run(command, options)
}
