//! Reconstruction of `b₀` and `a₀` from the angle coordinates.

use num_complex::Complex64;

use super::psi::{mu_of_angle, sigma_of_angle};
use crate::error::{Error, Result};
use crate::potential::{translate, AbelGeometry, AbelImage};
use crate::spectral::{AngleVector, GapSet};

/// `Q(φ) = ½(E̲ + Ē + Σ_j (E_j⁻ + E_j⁺ − 2μ_j))`.
pub fn trace_q(e: &GapSet, phi: &AngleVector) -> Result<f64> {
    if phi.len() != e.len() {
        return Err(Error::Dimension {
            expected: e.len(),
            got: phi.len(),
        });
    }
    let sum: f64 = e
        .gaps()
        .iter()
        .zip(&phi.0)
        .enumerate()
        .map(|(j, (g, &p))| g.lower + g.upper - 2.0 * mu_of_angle(e, j, p))
        .sum();
    Ok(0.5 * (e.lower() + e.upper() + sum))
}

/// `P(φ) = C(E) exp(−½ Σ_j (σ_j⁺ g(μ_j⁺) − σ_j g(μ_j)))`, where
/// `φ⁺ = 𝒜⁻¹(𝒜(φ) + α)` is the divisor one site to the right and `g` the
/// Green's function of `ℂ ∖ E`.
pub fn trace_p(geometry: Option<&AbelGeometry>, phi: &AngleVector, alpha: &AbelImage) -> Result<f64> {
    let geo = geometry.ok_or(Error::MissingDependency(
        "trace_P needs the equilibrium and harmonic measures of E",
    ))?;
    let e = geo.set();
    let plus = translate(geo, phi, alpha)?;
    let eq = geo.equilibrium();
    let term = |angles: &AngleVector| -> f64 {
        angles
            .0
            .iter()
            .enumerate()
            .map(|(j, &p)| f64::from(sigma_of_angle(p)) * eq.green(Complex64::new(mu_of_angle(e, j, p), 0.0)))
            .sum()
    };
    Ok(eq.capacity() * (-0.5 * (term(&plus) - term(phi))).exp())
}
