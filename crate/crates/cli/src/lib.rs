//! Declarative experiment runner for `toda-core`.
//!
//! A JSON config names an experiment, an operator or gap set and its knobs.
//! [`run`] executes it and returns a [`Report`] of tables and tolerance
//! checks; [`Report::write`] emits `<name>.csv`, `<name>.<table>.csv` for
//! each further table, and `<name>.meta.json`.

pub mod config;
pub mod error;
pub mod experiments;
pub mod presets;
pub mod report;

use std::time::Instant;

pub use config::{validate, Experiment, ExperimentConfig};
pub use error::{LabError, Result};
pub use presets::Preset;
pub use report::{Check, Report, ReportTable};

/// Validates `config` and runs its experiment.
pub fn run(config: &ExperimentConfig) -> Result<Report> {
    let problems = validate(config);
    if !problems.is_empty() {
        return Err(LabError::Config(problems.join("; ")));
    }
    let kind = config.kind()?;
    let clock = Instant::now();
    let mut outcome = experiments::dispatch(kind, config)?;
    let wall = clock.elapsed().as_secs_f64();
    if let Some(limit) = config.params.max_seconds {
        outcome.checks.push(Check::lt("wall_time_seconds", wall, limit));
    }
    Ok(Report {
        experiment: config.experiment.clone(),
        name: config.name.clone(),
        tables: outcome.tables,
        checks: outcome.checks,
        wall_time_seconds: wall,
    })
}
