//! Order check of the M-matrix flow law and time invariance of the Wronskian.
//!
//! Reads `params.z` (default `2` and `0.1 + 0.5i`), `params.h` (default
//! `1e-3`, paired with `h/10`), `params.eval_times` (default `[0.5]`) and
//! `params.wronskian_energy` (no Wronskian table when absent).

use rayon::prelude::*;
use toda_core::jacobi::{integrate_toda, integrate_with_solutions, solve_recurrence, wronskian};
use toda_core::spectral::m_matrix_flow_residual_at;
use toda_core::{Complex64, JacobiOperator, TodaState};

use super::{table, unit_interval, Outcome};
use crate::config::ExperimentConfig;
use crate::error::Result;
use crate::report::{Check, ReportTable};

pub fn run(config: &ExperimentConfig) -> Result<Outcome> {
    let op = config.require_operator()?;
    let tol = config.tol_or(1e-14);
    let p = &config.params;
    let zs = p.z.clone().unwrap_or_else(|| vec![[2.0, 0.0], [0.1, 0.5]]);
    let h = p.h.unwrap_or(1e-3);
    let eval_times = p.eval_times.clone().unwrap_or_else(|| vec![0.5]);

    let cells: Vec<(f64, [f64; 2])> = eval_times
        .iter()
        .flat_map(|&t| zs.iter().map(move |&z| (t, z)))
        .collect();
    let rows = cells
        .par_iter()
        .map(|&(t, z)| {
            let state = integrate_toda(&TodaState::new(op.clone(), 0.0), t, tol)?;
            let z = Complex64::new(z[0], z[1]);
            let coarse = m_matrix_flow_residual_at(&state, z, h, tol)?;
            let fine = m_matrix_flow_residual_at(&state, z, h / 10.0, tol)?;
            Ok(vec![t, z.re, z.im, h, coarse, fine, coarse / fine])
        })
        .collect::<Result<Vec<_>>>()?;

    let mut order = ReportTable::new(
        "",
        &["t", "z_re", "z_im", "h", "residual_h", "residual_h_over_10", "ratio"],
    );
    let mut checks = Vec::new();
    if !rows.is_empty() {
        let worst = rows.iter().map(|r| r[6]).fold(f64::INFINITY, f64::min);
        checks.push(Check::ge("min_residual_ratio", worst, 80.0));
    }
    for r in rows {
        order.push(r);
    }
    let mut tables = vec![order];
    if let Some(z) = p.wronskian_energy {
        let (w, drift) = wronskian_table(config, &op, z)?;
        tables.push(w);
        checks.push(Check::le("wronskian_drift", drift, 1e-6));
    }
    Ok(Outcome { tables, checks })
}

/// Two solutions of `Ju = zu` on sites `−8..8` propagated with the lattice.
fn wronskian_table(config: &ExperimentConfig, op: &JacobiOperator, z: f64) -> Result<(ReportTable, f64)> {
    let times = config.times_or(unit_interval());
    let u = solve_recurrence(op, z, -8, 1.0, 0.4, 17);
    let v = solve_recurrence(op, z, -8, 0.2, -1.0, 17);
    let w0 = wronskian(op, &u, &v, 0)?;
    let run = integrate_with_solutions(
        &TodaState::new(op.clone(), 0.0),
        &[u, v],
        z,
        &times,
        config.tol_or(1e-11),
    )?;
    let mut out = table("wronskian", ["t", "w", "drift"].map(String::from).to_vec());
    let mut drift = 0.0_f64;
    for (state, sols) in &run {
        let w = wronskian(&state.op, &sols[0], &sols[1], 0)?;
        drift = drift.max((w - w0).abs());
        out.push(vec![state.t, w, (w - w0).abs()]);
    }
    Ok((out, drift))
}
