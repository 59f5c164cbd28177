//! One module per experiment. Each returns its tables and checks.

mod appendix_a;
mod approximation;
mod craig;
mod dubrovin;
mod edge;
mod isospectrality;
mod linearization;
mod mmatrix;

use crate::config::{Experiment, ExperimentConfig, TimeGrid};
use crate::error::Result;
use crate::report::{Check, ReportTable};

pub use appendix_a::CELLS as APPENDIX_A_CELLS;

#[derive(Debug, Default)]
pub struct Outcome {
    pub tables: Vec<ReportTable>,
    pub checks: Vec<Check>,
}

pub fn dispatch(kind: Experiment, config: &ExperimentConfig) -> Result<Outcome> {
    match kind {
        Experiment::Isospectrality => isospectrality::run(config),
        Experiment::DubrovinVsDirect => dubrovin::run(config),
        Experiment::MMatrixFlow => mmatrix::run(config),
        Experiment::CraigReport => craig::run(config),
        Experiment::Linearization => linearization::run(config),
        Experiment::Approximation => approximation::run(config),
        Experiment::AppendixA => appendix_a::run(config),
        Experiment::EdgeCrossing => edge::run(config),
    }
}

/// `t ∈ [0, 1]` in steps of 0.05.
fn unit_interval() -> TimeGrid {
    TimeGrid::Uniform {
        start: 0.0,
        stop: 1.0,
        count: 21,
    }
}

fn max_abs_diff(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
}

fn indexed(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|j| format!("{prefix}_{j}")).collect()
}

fn table(suffix: &str, columns: Vec<String>) -> ReportTable {
    let refs: Vec<&str> = columns.iter().map(String::as_str).collect();
    ReportTable::new(suffix, &refs)
}
