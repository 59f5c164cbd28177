//! Eigenvalues of the periodic matrix, traces and the Hamiltonian along the
//! Toda flow.

use toda_core::jacobi::{conserved_traces, periodic_matrix, toda_trajectory, ParticleChain};
use toda_core::linalg::symmetric_eigenvalues;
use toda_core::TodaState;

use super::{indexed, max_abs_diff, table, unit_interval, Outcome};
use crate::config::ExperimentConfig;
use crate::error::{LabError, Result};
use crate::report::Check;

const MAX_POWER: usize = 4;

pub fn run(config: &ExperimentConfig) -> Result<Outcome> {
    let op = config.require_operator()?;
    let p = op
        .period()
        .ok_or_else(|| LabError::Config("isospectrality needs a periodic operator".into()))?;
    let k_max = MAX_POWER.min(2 * p);
    let tol = config.tol_or(1e-10);
    let times = config.times_or(unit_interval());
    let start = TodaState::new(op.clone(), 0.0);
    let states = toda_trajectory(&start, &times, tol)?;

    let eig0 = symmetric_eigenvalues(periodic_matrix(&op)?);
    let tr0 = conserved_traces(&op, k_max)?;
    let h0 = ParticleChain::from_operator(&op, 0.0)?.hamiltonian();

    let mut columns = vec!["t".to_string()];
    columns.extend(indexed("eig", p));
    columns.extend((1..=k_max).map(|k| format!("trace_{k}")));
    columns.extend(["eig_drift", "trace_drift", "hamiltonian"].map(String::from));
    let mut out = table("", columns);
    let (mut eig_drift, mut trace_drift, mut h_drift) = (0.0_f64, 0.0_f64, 0.0_f64);
    for s in &states {
        let eig = symmetric_eigenvalues(periodic_matrix(&s.op)?);
        let tr = conserved_traces(&s.op, k_max)?;
        let h = ParticleChain::from_operator(&s.op, 0.0)?.hamiltonian();
        let (de, dt) = (max_abs_diff(&eig, &eig0), max_abs_diff(&tr, &tr0));
        eig_drift = eig_drift.max(de);
        trace_drift = trace_drift.max(dt);
        h_drift = h_drift.max((h - h0).abs());
        let mut row = vec![s.t];
        row.extend(&eig);
        row.extend(&tr);
        row.extend([de, dt, h]);
        out.push(row);
    }
    Ok(Outcome {
        tables: vec![out],
        checks: vec![
            Check::le("eigenvalue_drift", eig_drift, 1e-8),
            Check::le("trace_drift", trace_drift, 1e-8),
            Check::le("hamiltonian_drift", h_drift, 1e-8),
        ],
    })
}
