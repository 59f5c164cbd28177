//! Density of states, the Thouless formula, Lyapunov exponents, the geometric
//! mean of the off-diagonal, and the trace formulas.
//!
//! `params.cells` picks the cells to run, all by default:
//! * `dos`: `params.dos_size` (default 2000) sites, `params.grid_points`
//!   (default 401) on the hull widened by 0.1.
//! * `thouless`: free set, ten points of `E` between eigenvalues of the
//!   `dos_size` truncation, and `x = 2`.
//! * `lyapunov`: band and gap midpoints and points outside the hull, with
//!   `params.lyapunov_steps` (default 20000) transfer steps.
//! * `geometric-mean`: `(a_1 ⋯ a_n)^{1/n}`, `n = 4000`, against `C(E)`.
//! * `traces`: `trace_Q` and `trace_P` along the divisors `φ(n)`,
//!   `n = 0..=2p`, reached by Abel translation.

use rayon::prelude::*;
use toda_core::flow::{trace_p, trace_q};
use toda_core::potential::{
    density_of_states, equilibrium_measure, geometric_mean, lyapunov_exponent, shift_character, thouless_values,
    translate, truncation_eigenvalues,
};
use toda_core::spectral::{angles_from_divisor, dirichlet_data, periodic_spectrum};
use toda_core::{AbelGeometry, AbelImage, AngleVector, Complex64, EquilibriumData, GapSet, JacobiOperator};

use super::Outcome;
use crate::config::ExperimentConfig;
use crate::error::{LabError, Result};
use crate::report::{Check, ReportTable};

pub const CELLS: [&str; 5] = ["dos", "thouless", "lyapunov", "geometric-mean", "traces"];

const QUADRATURE_NODES: usize = 32;

pub fn run(config: &ExperimentConfig) -> Result<Outcome> {
    let op = config.require_operator()?;
    let e = periodic_spectrum(&op)?;
    let eq = equilibrium_measure(&e, QUADRATURE_NODES)?;
    let cells = match &config.params.cells {
        Some(c) => c.clone(),
        None => CELLS.map(String::from).to_vec(),
    };
    if let Some(bad) = cells.iter().find(|c| !CELLS.contains(&c.as_str())) {
        return Err(LabError::Config(format!(
            "unknown appendix-a cell '{bad}'; expected one of: {}",
            CELLS.join(", ")
        )));
    }
    let parts = cells
        .par_iter()
        .map(|c| match c.as_str() {
            "dos" => dos(config, &op, &e, &eq),
            "thouless" => thouless(config),
            "lyapunov" => lyapunov(config, &op, &e, &eq),
            "geometric-mean" => capacity(&op, &eq),
            _ => traces(&op, &e),
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = Outcome::default();
    for part in parts {
        out.tables.extend(part.tables);
        out.checks.extend(part.checks);
    }
    Ok(out)
}

fn dos(config: &ExperimentConfig, op: &JacobiOperator, e: &GapSet, eq: &EquilibriumData) -> Result<Outcome> {
    let n = config.params.dos_size.unwrap_or(2000);
    let points = config.params.grid_points.unwrap_or(401).max(2);
    let (lo, hi) = (e.lower() - 0.1, e.upper() + 0.1);
    let grid: Vec<f64> = (0..points)
        .map(|k| lo + (hi - lo) * k as f64 / (points - 1) as f64)
        .collect();
    let k = density_of_states(op, n, &grid)?;
    let mut t = ReportTable::new("dos", &["x", "k_n", "rho_e", "abs_diff"]);
    let mut sup = 0.0_f64;
    for (x, kx) in grid.iter().zip(&k) {
        let r = eq.cdf(*x);
        sup = sup.max((kx - r).abs());
        t.push(vec![*x, *kx, r, (kx - r).abs()]);
    }
    Ok(Outcome {
        tables: vec![t],
        checks: vec![Check::le("dos_sup_discrepancy", sup, 0.01)],
    })
}

fn thouless(config: &ExperimentConfig) -> Result<Outcome> {
    let n = config.params.dos_size.unwrap_or(2000);
    if n < 20 {
        return Err(LabError::Config(
            "dos_size must be at least 20 for the Thouless cell".into(),
        ));
    }
    let free = JacobiOperator::free();
    let eq = equilibrium_measure(&GapSet::interval(-1.0, 1.0)?, QUADRATURE_NODES)?;
    let eig = truncation_eigenvalues(&free, n)?;
    // Midpoints between consecutive eigenvalues, spread over the middle of E.
    let stride = (n - n / 5) / 10;
    let inside: Vec<f64> = (0..10)
        .map(|k| {
            let i = n / 10 + stride * k;
            0.5 * (eig[i] + eig[i + 1])
        })
        .collect();
    let mut grid = inside.clone();
    grid.push(2.0);
    let values = thouless_values(&eq, &eig, &grid);
    let mut t = ReportTable::new("thouless", &["x", "l_hat", "green"]);
    for (x, v) in grid.iter().zip(&values) {
        t.push(vec![*x, *v, eq.green(Complex64::new(*x, 0.0))]);
    }
    let on_e = values[..10].iter().map(|v| v.abs()).fold(0.0, f64::max);
    let off = (values[10] - eq.green(Complex64::new(2.0, 0.0))).abs();
    Ok(Outcome {
        tables: vec![t],
        checks: vec![
            Check::le("thouless_on_spectrum", on_e, 0.01),
            Check::le("thouless_minus_green_at_2", off, 1e-3),
        ],
    })
}

fn lyapunov(config: &ExperimentConfig, op: &JacobiOperator, e: &GapSet, eq: &EquilibriumData) -> Result<Outcome> {
    let steps = config.params.lyapunov_steps.unwrap_or(20_000);
    let mut xs = vec![e.lower() - 0.5, e.upper() + 0.5];
    xs.extend(e.gaps().iter().map(|g| g.midpoint()));
    xs.extend(e.bands().iter().map(|b| b.midpoint()));
    xs.sort_by(f64::total_cmp);
    let mut t = ReportTable::new("lyapunov", &["x", "in_spectrum", "lyapunov", "green"]);
    let mut worst = 0.0_f64;
    for x in xs {
        let l = lyapunov_exponent(op, x, steps)?;
        let g = eq.green(Complex64::new(x, 0.0));
        worst = worst.max((l - g).abs());
        t.push(vec![x, f64::from(u8::from(e.contains(x))), l, g]);
    }
    Ok(Outcome {
        tables: vec![t],
        checks: vec![Check::le("lyapunov_minus_green", worst, 1e-3)],
    })
}

fn capacity(op: &JacobiOperator, eq: &EquilibriumData) -> Result<Outcome> {
    let gm = geometric_mean(op, 4000)?;
    let mut t = ReportTable::new("capacity", &["geometric_mean", "capacity", "abs_diff"]);
    t.push(vec![gm, eq.capacity(), (gm - eq.capacity()).abs()]);
    Ok(Outcome {
        tables: vec![t],
        checks: vec![Check::le(
            "geometric_mean_vs_capacity",
            (gm - eq.capacity()).abs(),
            1e-6,
        )],
    })
}

fn traces(op: &JacobiOperator, e: &GapSet) -> Result<Outcome> {
    let p = op
        .period()
        .ok_or_else(|| LabError::Config("the traces cell needs a periodic operator".into()))?;
    let geo = AbelGeometry::new(e)?;
    let alpha = shift_character(&geo);
    let mut phi = angles_from_divisor(e, &dirichlet_data(op, e, 0)?)?;
    let mut t = ReportTable::new("traces", &["n", "b_n", "trace_q", "a_n", "trace_p"]);
    let (mut q_err, mut p0_err) = (0.0_f64, f64::NAN);
    for n in 0..=2 * p as i64 {
        let q = trace_q(e, &phi)?;
        let pv = trace_p(Some(&geo), &phi, &alpha)?;
        q_err = q_err.max((q - op.b(n)).abs());
        if n == 0 {
            p0_err = (pv - op.a(0)).abs();
        }
        t.push(vec![n as f64, op.b(n), q, op.a(n), pv]);
        phi = translate(&geo, &phi, &alpha)?;
    }
    let free = AbelGeometry::new(&GapSet::interval(-1.0, 1.0)?)?;
    let free_p = trace_p(Some(&free), &AngleVector(vec![]), &AbelImage(vec![]))?;
    let mut f = ReportTable::new("traces-free", &["trace_p", "a"]);
    f.push(vec![free_p, 0.5]);
    Ok(Outcome {
        tables: vec![t, f],
        checks: vec![
            Check::le("trace_q_vs_b", q_err, 1e-8),
            Check::le("trace_p_free_vs_half", (free_p - 0.5).abs(), 1e-8),
            Check::le("trace_p_vs_a0", p0_err, 1e-4),
        ],
    })
}
