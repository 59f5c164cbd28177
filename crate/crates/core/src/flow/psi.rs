//! The vector field Ψ on the torus of Dirichlet angles.
//!
//! Radicands are taken in absolute value; the signs of `σ_j` and `sin φ_j`
//! carry the orientation.

use std::f64::consts::PI;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::spectral::{reduce_angle, AngleVector, GapSet};

/// `μ_j = E_j⁻ + γ_j cos²(φ_j/2)`.
#[must_use]
pub fn mu_of_angle(e: &GapSet, j: usize, phi: f64) -> f64 {
    let g = e.gap(j);
    let c = (0.5 * phi).cos();
    g.lower + g.width() * c * c
}

fn mus(e: &GapSet, phi: &[f64]) -> Vec<f64> {
    phi.iter().enumerate().map(|(j, &p)| mu_of_angle(e, j, p)).collect()
}

fn check(e: &GapSet, phi: &[f64]) -> Result<()> {
    if phi.len() == e.len() {
        Ok(())
    } else {
        Err(Error::Dimension {
            expected: e.len(),
            got: phi.len(),
        })
    }
}

/// Ψ evaluated into `out`, with `μ` precomputed.
pub(crate) fn psi_from_mu(e: &GapSet, mu: &[f64], out: &mut [f64]) {
    let gaps = e.gaps();
    for j in 0..mu.len() {
        let m = mu[j];
        let mut log = (e.lower() - m).abs().ln() + (e.upper() - m).abs().ln();
        for (k, g) in gaps.iter().enumerate() {
            if k == j {
                continue;
            }
            let d = mu[k] - m;
            assert!(d != 0.0, "Dirichlet points of distinct gaps coincide");
            log += (g.lower - m).abs().ln() + (g.upper - m).abs().ln() - 2.0 * d.abs().ln();
        }
        out[j] = 2.0 * (0.5 * log).exp();
    }
}

/// `Ψ_j(φ) = 2 (|E̲ − μ_j| |Ē − μ_j| Π_{k≠j} |E_k⁻ − μ_j| |E_k⁺ − μ_j| / (μ_k − μ_j)²)^{1/2}`.
pub fn psi(e: &GapSet, phi: &AngleVector) -> Result<Vec<f64>> {
    check(e, &phi.0)?;
    let mut out = vec![0.0; phi.len()];
    psi_from_mu(e, &mus(e, &phi.0), &mut out);
    Ok(out)
}

/// `∂Ψ_j/∂φ_k`, using `dμ_k/dφ_k = −(γ_k/2) sin φ_k`:
/// `Ψ_j γ_k sin φ_k / (2(μ_k − μ_j))` off the diagonal and
/// `−(γ_j/4) sin φ_j Ψ_j (1/(μ_j − E̲) + 1/(μ_j − Ē) + Σ_{l≠j} (1/(μ_j − E_l⁺) + 1/(μ_j − E_l⁻) − 2/(μ_j − μ_l)))`
/// on it.
pub fn psi_jacobian(e: &GapSet, phi: &AngleVector) -> Result<DMatrix<f64>> {
    check(e, &phi.0)?;
    let g = e.len();
    let mu = mus(e, &phi.0);
    let mut p = vec![0.0; g];
    psi_from_mu(e, &mu, &mut p);
    let mut jac = DMatrix::zeros(g, g);
    for j in 0..g {
        let m = mu[j];
        let mut dlog = 1.0 / (m - e.lower()) + 1.0 / (m - e.upper());
        for (l, gl) in e.gaps().iter().enumerate() {
            if l == j {
                continue;
            }
            dlog += 1.0 / (m - gl.upper) + 1.0 / (m - gl.lower) - 2.0 / (m - mu[l]);
            jac[(j, l)] = p[j] * e.gamma(l) * phi.0[l].sin() / (2.0 * (mu[l] - m));
        }
        jac[(j, j)] = -0.25 * e.gamma(j) * phi.0[j].sin() * p[j] * dlog;
    }
    Ok(jac)
}

/// `σ_j` from the angle: `+1` on `(0, π)`, `−1` on `(−π, 0)`, `0` on `πℤ`.
#[must_use]
pub fn sigma_of_angle(phi: f64) -> i8 {
    let r = reduce_angle(phi);
    if r == 0.0 || r == PI {
        0
    } else if r > 0.0 {
        1
    } else {
        -1
    }
}

/// `dμ_j/dt = −σ_j (|E_j⁺ − μ_j| |μ_j − E_j⁻|)^{1/2} Ψ_j(φ)`.
pub fn mu_velocity(e: &GapSet, phi: &AngleVector) -> Result<Vec<f64>> {
    let p = psi(e, phi)?;
    Ok(phi
        .0
        .iter()
        .enumerate()
        .map(|(j, &ph)| {
            let g = e.gap(j);
            let m = mu_of_angle(e, j, ph);
            -f64::from(sigma_of_angle(ph)) * ((g.upper - m).abs() * (m - g.lower).abs()).sqrt() * p[j]
        })
        .collect())
}

/// Shorter arc length on `ℝ/2πℤ`.
#[must_use]
pub fn circle_distance(x: f64, y: f64) -> f64 {
    let d = (x - y).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}

/// `sup_j γ_j^{1/2} ‖φ_j − φ̃_j‖_𝕋`.
pub fn torus_distance(e: &GapSet, phi: &AngleVector, other: &AngleVector) -> Result<f64> {
    check(e, &phi.0)?;
    check(e, &other.0)?;
    Ok(phi
        .0
        .iter()
        .zip(&other.0)
        .enumerate()
        .map(|(j, (x, y))| e.gamma(j).sqrt() * circle_distance(*x, *y))
        .fold(0.0, f64::max))
}

/// `sup_j γ_j^{1/2} |v_j|`, the norm on tangent vectors.
#[must_use]
pub fn tangent_norm(e: &GapSet, v: &[f64]) -> f64 {
    v.iter()
        .enumerate()
        .map(|(j, x)| e.gamma(j).sqrt() * x.abs())
        .fold(0.0, f64::max)
}
