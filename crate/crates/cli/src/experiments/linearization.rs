//! Affine growth of the Abel image along the Dubrovin flow, and the shift
//! character on an operator's spectrum.
//!
//! The flow runs for `params.circulations` (default 3) turns of the first
//! angle with `params.samples_per_circulation` (default 100) samples per
//! turn; the fit is repeated at four times the sampling. Reads
//! `params.initial_angles` (default 0.4 in every gap). An `operator`, if
//! given, adds the shift-character residual on its own spectrum.

use std::f64::consts::PI;

use toda_core::flow::{integrate_dubrovin, time_to_reach, DubrovinField};
use toda_core::potential::{shift_residual, toda_frequencies};
use toda_core::spectral::periodic_spectrum;
use toda_core::{AbelGeometry, AngleVector};

use super::Outcome;
use crate::config::ExperimentConfig;
use crate::error::{LabError, Result};
use crate::report::{Check, ReportTable};

pub fn run(config: &ExperimentConfig) -> Result<Outcome> {
    let e = config.gap_set()?;
    if e.is_empty() {
        return Err(LabError::Config("linearization needs at least one gap".into()));
    }
    let g = e.len();
    let geo = AbelGeometry::new(&e)?;
    let start = AngleVector(config.params.initial_angles.clone().unwrap_or_else(|| vec![0.4; g]));
    let circulations = config.params.circulations.unwrap_or(3);
    let per = config.params.samples_per_circulation.unwrap_or(100);
    let tol = config.tol_or(1e-12);

    let field = DubrovinField::new(e.clone());
    let period = time_to_reach(&field, &start, 0, start.0[0] + 2.0 * PI, tol)?;
    let horizon = circulations as f64 * period;
    let fit = |samples: usize| {
        let times: Vec<f64> = (0..=samples).map(|k| horizon * k as f64 / samples as f64).collect();
        let traj = integrate_dubrovin(&e, &start, &times, tol)?;
        Ok::<_, LabError>(toda_frequencies(&geo, &traj)?)
    };
    let (coarse, fine) = rayon::join(|| fit(circulations * per), || fit(4 * circulations * per));
    let (coarse, fine) = (coarse?, fine?);

    let mut zeta = ReportTable::new("", &["j", "zeta_fit", "zeta_fine", "zeta_closed_form"]);
    let (mut vs_closed, mut vs_fine) = (0.0_f64, 0.0_f64);
    for j in 0..g {
        let closed = geo.harmonic().frequency(j);
        vs_closed = vs_closed.max((coarse.zeta[j] - closed).abs());
        vs_fine = vs_fine.max((coarse.zeta[j] - fine.zeta[j]).abs());
        zeta.push(vec![j as f64, coarse.zeta[j], fine.zeta[j], closed]);
    }
    let mut fit_table = ReportTable::new(
        "fit",
        &["period", "circulations", "samples", "residual", "residual_fine"],
    );
    fit_table.push(vec![
        period,
        circulations as f64,
        (circulations * per) as f64,
        coarse.residual,
        fine.residual,
    ]);

    let mut tables = vec![zeta, fit_table];
    let mut checks = vec![
        Check::le("affine_fit_residual", coarse.residual, 1e-4),
        Check::le("zeta_vs_closed_form", vs_closed, 1e-6),
        Check::le("zeta_sampling_change", vs_fine, 1e-6),
    ];
    if let Some(op) = config.operator()? {
        let own = AbelGeometry::new(&periodic_spectrum(&op)?)?;
        let r = shift_residual(&own, &op)?;
        let mut shift = ReportTable::new("shift", &["residual"]);
        shift.push(vec![r]);
        tables.push(shift);
        checks.push(Check::le("shift_character_residual", r, 1e-5));
    }
    Ok(Outcome { tables, checks })
}
