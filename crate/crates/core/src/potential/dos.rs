//! Density of states, Lyapunov exponents and the Thouless formula.

use num_complex::Complex64;

use super::equilibrium::EquilibriumData;
use crate::error::{Error, Result};
use crate::jacobi::{one_step, JacobiOperator};
use crate::linalg::{sturm_count, tridiagonal_eigenvalues};

fn truncation(op: &JacobiOperator, n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if n < 2 {
        return Err(Error::Domain(format!("truncation size {n} is too small")));
    }
    let diag = (0..n as i64).map(|k| op.b(k)).collect();
    let off = (0..n as i64 - 1).map(|k| op.a(k)).collect();
    Ok((diag, off))
}

/// Eigenvalues of the restriction of `op` to sites `0..n`.
pub fn truncation_eigenvalues(op: &JacobiOperator, n: usize) -> Result<Vec<f64>> {
    let (d, o) = truncation(op, n)?;
    Ok(tridiagonal_eigenvalues(&d, &o))
}

/// `k_n(x)`: the fraction of eigenvalues of the `n × n` truncation below `x`,
/// at each grid point.
pub fn density_of_states(op: &JacobiOperator, n: usize, grid: &[f64]) -> Result<Vec<f64>> {
    let (d, o) = truncation(op, n)?;
    Ok(grid.iter().map(|&x| sturm_count(&d, &o, x) as f64 / n as f64).collect())
}

/// `sup_grid |k_n(x) − ρ_E((−∞, x])|`.
pub fn dos_vs_equilibrium(op: &JacobiOperator, eq: &EquilibriumData, n: usize, grid: &[f64]) -> Result<f64> {
    let k = density_of_states(op, n, grid)?;
    Ok(grid
        .iter()
        .zip(&k)
        .map(|(&x, kx)| (kx - eq.cdf(x)).abs())
        .fold(0.0, f64::max))
}

/// `(1/n) log ‖T(x; n, 0)‖` with the product renormalized at every step.
pub fn lyapunov_exponent(op: &JacobiOperator, x: f64, n_steps: usize) -> Result<f64> {
    if n_steps == 0 {
        return Err(Error::Domain("at least one transfer step is needed".into()));
    }
    let z = Complex64::new(x, 0.0);
    let mut log_norm = 0.0;
    let mut m = one_step(op, z, 0);
    for n in 1..n_steps as i64 {
        let s = m.max_abs();
        log_norm += s.ln();
        m = one_step(op, z, n).mul(&m.scale(1.0 / s));
    }
    Ok((log_norm + m.max_abs().ln()) / n_steps as f64)
}

/// `(1/N) Σ_i log|λ_i − x| − log C(E)` at each grid point.
#[must_use]
pub fn thouless_values(eq: &EquilibriumData, eigenvalues: &[f64], grid: &[f64]) -> Vec<f64> {
    let n = eigenvalues.len() as f64;
    grid.iter()
        .map(|&x| eigenvalues.iter().map(|l| (l - x).abs().ln()).sum::<f64>() / n - eq.log_capacity())
        .collect()
}

/// `sup_grid |∫ log|t − x| dk(t) − log C(E)|` with `dk` the counting measure
/// of `eigenvalues`.
#[must_use]
pub fn thouless_check(eq: &EquilibriumData, eigenvalues: &[f64], grid: &[f64]) -> f64 {
    thouless_values(eq, eigenvalues, grid)
        .into_iter()
        .map(f64::abs)
        .fold(0.0, f64::max)
}

/// `(a_1 ⋯ a_n)^{1/n}`.
pub fn geometric_mean(op: &JacobiOperator, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("empty product".into()));
    }
    let s: f64 = (1..=n as i64).map(|k| op.a(k).ln()).sum();
    Ok((s / n as f64).exp())
}
