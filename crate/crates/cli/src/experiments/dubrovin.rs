//! Dirichlet points at site 0 from the direct Toda flow against the Dubrovin
//! flow started at the same divisor.

use toda_core::flow::integrate_dubrovin;
use toda_core::jacobi::toda_trajectory;
use toda_core::spectral::{angles_from_divisor, dirichlet_data};
use toda_core::TodaState;

use super::{indexed, table, unit_interval, Outcome};
use crate::config::ExperimentConfig;
use crate::error::Result;
use crate::report::Check;

pub fn run(config: &ExperimentConfig) -> Result<Outcome> {
    let op = config.require_operator()?;
    let e = config.gap_set()?;
    let tol = config.tol_or(1e-10);
    let times = config.times_or(unit_interval());
    let phi0 = angles_from_divisor(&e, &dirichlet_data(&op, &e, 0)?)?;
    let (direct, dubrovin) = rayon::join(
        || toda_trajectory(&TodaState::new(op.clone(), 0.0), &times, tol),
        || integrate_dubrovin(&e, &phi0, &times, tol),
    );
    let (direct, dubrovin) = (direct?, dubrovin?);

    let g = e.len();
    let mut columns = vec!["t".to_string()];
    columns.extend(indexed("mu_direct", g));
    columns.extend(indexed("mu_dubrovin", g));
    columns.extend(indexed("abs_diff", g));
    let mut out = table("", columns);
    let mut sup = 0.0_f64;
    for (i, s) in direct.iter().enumerate() {
        let d = dirichlet_data(&s.op, &e, 0)?.mu();
        let m = dubrovin.divisor(&e, i)?.mu();
        let diff: Vec<f64> = d.iter().zip(&m).map(|(x, y)| (x - y).abs()).collect();
        sup = diff.iter().copied().fold(sup, f64::max);
        let mut row = vec![s.t];
        row.extend(&d);
        row.extend(&m);
        row.extend(&diff);
        out.push(row);
    }
    Ok(Outcome {
        tables: vec![out],
        checks: vec![Check::le("sup_mu_discrepancy", sup, 1e-6)],
    })
}
