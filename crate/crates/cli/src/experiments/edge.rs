//! Time spent by a Dirichlet point near a gap edge.
//!
//! The dwell time within `δ` of an edge is `t(φ_j = kπ + δ) − t(φ_j = kπ − δ)`
//! for the first two multiples of π ahead of the start, one at each edge.
//! Reads `params.gap_index` (default 0), `params.initial_angles` (default 0.5
//! in every gap) and `params.deltas` (default `1e-2, 1e-3, 1e-4`).

use std::f64::consts::PI;

use rayon::prelude::*;
use toda_core::fit::power_law_fit;
use toda_core::flow::{integrate_dubrovin, mu_of_angle, psi, sigma_of_angle, time_to_reach, DubrovinField};
use toda_core::spectral::reduce_angle;
use toda_core::AngleVector;

use super::{table, Outcome};
use crate::config::ExperimentConfig;
use crate::error::{LabError, Result};
use crate::report::{Check, ReportTable};

const TRAJECTORY_SAMPLES: usize = 201;

pub fn run(config: &ExperimentConfig) -> Result<Outcome> {
    let e = config.gap_set()?;
    let g = e.len();
    let j = config.params.gap_index.unwrap_or(0);
    if j >= g {
        return Err(LabError::Config(format!("gap_index {j} is out of range for {g} gaps")));
    }
    let start = AngleVector(config.params.initial_angles.clone().unwrap_or_else(|| vec![0.5; g]));
    let deltas = config.params.deltas.clone().unwrap_or_else(|| vec![1e-2, 1e-3, 1e-4]);
    if deltas.len() < 2 || deltas.iter().any(|&d| !(d > 0.0 && d < 0.5)) {
        return Err(LabError::Config("deltas need at least two values in (0, 0.5)".into()));
    }
    let tol = config.tol_or(1e-12);
    let field = DubrovinField::new(e.clone());

    let widest = deltas.iter().copied().fold(0.0, f64::max);
    let mut k = (start.0[j] / PI).floor() + 1.0;
    if k * PI - widest <= start.0[j] {
        k += 1.0;
    }
    let edges = [k * PI, (k + 1.0) * PI];
    let dwell = deltas
        .par_iter()
        .map(|&d| {
            let mut out = [0.0; 2];
            for (slot, &edge) in out.iter_mut().zip(&edges) {
                let before = time_to_reach(&field, &start, j, edge - d, tol)?;
                let after = time_to_reach(&field, &start, j, edge + d, tol)?;
                *slot = after - before;
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;

    // φ ≡ π puts μ at the lower edge E⁻, φ ≡ 0 at the upper edge E⁺.
    let lower_first = (k as i64) % 2 == 1;
    let (lo, hi) = if lower_first { (0, 1) } else { (1, 0) };
    let mut main = ReportTable::new("", &["delta", "dwell_lower_edge", "dwell_upper_edge"]);
    for (d, w) in deltas.iter().zip(&dwell) {
        main.push(vec![*d, w[lo], w[hi]]);
    }
    let exponent = |i: usize| power_law_fit(&deltas, &dwell.iter().map(|w| w[i]).collect::<Vec<_>>()).1;
    let (p_lower, p_upper) = (exponent(lo), exponent(hi));
    let mut fit = ReportTable::new("fit", &["gap", "exponent_lower_edge", "exponent_upper_edge"]);
    fit.push(vec![j as f64, p_lower, p_upper]);

    let mut at_edges = ReportTable::new("edges", &["gap", "psi_at_lower_edge", "psi_at_upper_edge"]);
    let mut min_psi = f64::INFINITY;
    for k in 0..g {
        let mut values = [0.0; 2];
        for (slot, angle) in values.iter_mut().zip([PI, 0.0]) {
            let mut phi = start.clone();
            phi.0[k] = angle;
            *slot = psi(&e, &phi)?[k];
        }
        min_psi = min_psi.min(values[0]).min(values[1]);
        at_edges.push(vec![k as f64, values[0], values[1]]);
    }

    let t_end = time_to_reach(&field, &start, j, edges[1] + 0.5, tol)?;
    let times: Vec<f64> = (0..TRAJECTORY_SAMPLES)
        .map(|i| t_end * i as f64 / (TRAJECTORY_SAMPLES - 1) as f64)
        .collect();
    let traj = integrate_dubrovin(&e, &start, &times, tol)?;
    let mut trajectory = table(
        "trajectory",
        ["t", "phi", "mu", "sigma", "psi"].map(String::from).to_vec(),
    );
    for (i, t) in times.iter().enumerate() {
        let phi = traj.reduced(i);
        let v = psi(&e, &phi)?;
        trajectory.push(vec![
            *t,
            phi.0[j],
            mu_of_angle(&e, j, phi.0[j]),
            f64::from(sigma_of_angle(reduce_angle(phi.0[j]))),
            v[j],
        ]);
    }

    Ok(Outcome {
        tables: vec![main, fit, at_edges, trajectory],
        checks: vec![
            Check::le("dwell_exponent_lower_edge_error", (p_lower - 1.0).abs(), 0.2),
            Check::le("dwell_exponent_upper_edge_error", (p_upper - 1.0).abs(), 0.2),
            Check::gt("min_psi_at_edges", min_psi, 0.0),
        ],
    })
}
