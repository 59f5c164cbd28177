//! Equilibrium measure, capacity and Green's function of a finite-gap set.
//!
//! In the scaled variable the density is `|ψ(s)|/(π√|R(s)|)`, where `R` has
//! a simple root at every band edge and the monic `ψ` of degree `g` has zero
//! integral against `1/√|R|` over every gap. On band `b` with
//! `s = m + c cos θ` the measure is `W_b(θ) dθ` with `W_b` smooth, so it is
//! stored as a cosine series. The logarithmic potential is summed in closed
//! form from
//! `log|X − cos θ| = log|ζ/2| − Σ_{n≥1} (2/n) Re(ζ^{−n}) cos nθ`,
//! `ζ = X + √(X − 1)√(X + 1)`.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::edges::{poly, solve_checked, ScaledEdges};
use crate::error::{Error, Result};
use crate::quad::{chebyshev_angles, cosine_coefficients, cosine_series_integral};
use crate::spectral::GapSet;

const MIN_NODES: usize = 32;
const MAX_NODES: usize = 8192;

#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumData {
    set: GapSet,
    edges: ScaledEdges,
    /// Monic `ψ`, ascending powers of `s`.
    psi: Vec<f64>,
    /// Cosine coefficients of `W_b`, one vector per band.
    bands: Vec<Vec<f64>>,
    n_nodes: usize,
    log_capacity: f64,
}

/// Gap integrals `∫_gap f(s)/√|R(s)| ds` of the monomials `s^0..=s^deg`,
/// one row per gap.
pub(crate) fn gap_moments(edges: &ScaledEdges, deg: usize, n: usize) -> DMatrix<f64> {
    let g = edges.genus();
    let angles = chebyshev_angles(n);
    let mut out = DMatrix::zeros(g, deg + 1);
    for k in 0..g {
        for &th in &angles {
            let s = edges.gap_point(k, th);
            let w = PI / n as f64 / edges.sqrt_other(s, 2 * k + 1);
            let mut p = 1.0;
            for i in 0..=deg {
                out[(k, i)] += w * p;
                p *= s;
            }
        }
    }
    out
}

fn build(set: &GapSet, n: usize) -> Result<EquilibriumData> {
    let edges = ScaledEdges::new(set);
    let g = edges.genus();
    let mut psi = vec![0.0; g + 1];
    psi[g] = 1.0;
    if g > 0 {
        let mom = gap_moments(&edges, g, n);
        let lhs = mom.columns(0, g).into_owned();
        let rhs = -mom.columns(g, 1).into_owned();
        let sol = solve_checked(lhs, rhs)?;
        psi[..g].copy_from_slice(sol.as_slice());
    }
    let angles = chebyshev_angles(n);
    let bands = (0..=g)
        .map(|b| {
            let samples: Vec<f64> = angles
                .iter()
                .map(|&th| {
                    let s = edges.band_point(b, th);
                    poly(&psi, s).abs() / (PI * edges.sqrt_other(s, 2 * b))
                })
                .collect();
            cosine_coefficients(&samples)
        })
        .collect();
    let mut data = EquilibriumData {
        set: set.clone(),
        edges,
        psi,
        bands,
        n_nodes: n,
        log_capacity: 0.0,
    };
    data.log_capacity = data.log_potential(Complex64::new(set.upper(), 0.0));
    Ok(data)
}

/// Equilibrium measure of `e` with at least `n_nodes` (and at least 32)
/// Chebyshev nodes per band; the count is doubled until `log C(E)` changes by
/// at most `1e−10`.
pub fn equilibrium_measure(e: &GapSet, n_nodes: usize) -> Result<EquilibriumData> {
    let mut n = n_nodes.max(MIN_NODES);
    let mut previous = build(e, n)?;
    loop {
        n *= 2;
        let next = build(e, n)?;
        if (next.log_capacity - previous.log_capacity).abs() <= 1e-10 {
            return Ok(next);
        }
        if n >= MAX_NODES {
            return Err(Error::Convergence {
                depth: n,
                last: next.log_capacity.into(),
                previous: previous.log_capacity.into(),
            });
        }
        previous = next;
    }
}

impl EquilibriumData {
    #[must_use]
    pub fn set(&self) -> &GapSet {
        &self.set
    }

    pub(crate) fn edges(&self) -> &ScaledEdges {
        &self.edges
    }

    /// Chebyshev nodes per band.
    #[must_use]
    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    /// `C(E)`.
    #[must_use]
    pub fn capacity(&self) -> f64 {
        self.log_capacity.exp()
    }

    #[must_use]
    pub fn log_capacity(&self) -> f64 {
        self.log_capacity
    }

    /// `−log C(E)`.
    #[must_use]
    pub fn robin_constant(&self) -> f64 {
        -self.log_capacity
    }

    /// Coefficients of the monic polynomial `ψ` in the scaled variable.
    #[must_use]
    pub fn psi_coefficients(&self) -> &[f64] {
        &self.psi
    }

    /// `ρ_E` of each band.
    #[must_use]
    pub fn band_masses(&self) -> Vec<f64> {
        self.bands.iter().map(|c| PI * c[0]).collect()
    }

    #[must_use]
    pub fn total_mass(&self) -> f64 {
        self.band_masses().iter().sum()
    }

    /// Quadrature nodes and weights of `ρ_E` on band `b`, in the original
    /// variable.
    #[must_use]
    pub fn band_nodes(&self, b: usize) -> (Vec<f64>, Vec<f64>) {
        let n = self.n_nodes;
        let angles = chebyshev_angles(n);
        let x = angles
            .iter()
            .map(|&th| self.edges.to_x(self.edges.band_point(b, th)))
            .collect();
        let w = angles
            .iter()
            .map(|&th| {
                let s = self.edges.band_point(b, th);
                PI / n as f64 * poly(&self.psi, s).abs() / (PI * self.edges.sqrt_other(s, 2 * b))
            })
            .collect();
        (x, w)
    }

    /// Density of `ρ_E` with respect to `dx`; zero off `E`.
    #[must_use]
    pub fn density(&self, x: f64) -> f64 {
        if !self.set.contains(x) {
            return 0.0;
        }
        let s = self.edges.to_s(x);
        let r: f64 = self.edges.e.iter().map(|e| (s - e).abs()).product();
        poly(&self.psi, s).abs() / (PI * r.sqrt() * self.edges.half)
    }

    /// `ρ_E((−∞, x])`.
    #[must_use]
    pub fn cdf(&self, x: f64) -> f64 {
        let s = self.edges.to_s(x);
        let masses = self.band_masses();
        let mut acc = 0.0;
        for (b, coeffs) in self.bands.iter().enumerate() {
            let (m, c) = self.edges.band(b);
            if s >= m + c {
                acc += masses[b];
            } else if s > m - c {
                let th = ((s - m) / c).clamp(-1.0, 1.0).acos();
                acc += cosine_series_integral(coeffs, PI) - cosine_series_integral(coeffs, th);
                break;
            } else {
                break;
            }
        }
        acc
    }

    /// `∫ log|z − t| dρ_E(t)`.
    #[must_use]
    pub fn log_potential(&self, z: Complex64) -> f64 {
        let s = (z - self.edges.center) / self.edges.half;
        let log_half = self.edges.half.ln();
        let one = Complex64::new(1.0, 0.0);
        let mut acc = 0.0;
        for (b, coeffs) in self.bands.iter().enumerate() {
            let (m, c) = self.edges.band(b);
            let x = (s - m) / c;
            let zeta = x + (x - one).sqrt() * (x + one).sqrt();
            let zeta = if zeta.norm() < 1.0 { 1.0 / zeta } else { zeta };
            let inv = 1.0 / zeta;
            let mut pow = inv;
            let mut series = 0.0;
            for (k, w) in coeffs.iter().enumerate().skip(1) {
                series += w / k as f64 * pow.re;
                pow *= inv;
            }
            acc += PI * coeffs[0] * (log_half + c.ln() + (0.5 * zeta).norm().ln()) - PI * series;
        }
        acc
    }

    /// `g(z) = ∫ log|z − t| dρ_E(t) − log C(E)`.
    #[must_use]
    pub fn green(&self, z: Complex64) -> f64 {
        self.log_potential(z) - self.log_capacity
    }
}

/// Green's function of `ℂ ∖ E` with pole at infinity.
#[must_use]
pub fn green_function(geo: &EquilibriumData, z: Complex64) -> f64 {
    geo.green(z)
}

/// Logarithmic capacity `C(E)`.
#[must_use]
pub fn capacity(geo: &EquilibriumData) -> f64 {
    geo.capacity()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::Gap;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn interval_is_arcsine() {
        let e = GapSet::interval(-1.0, 1.0).unwrap();
        let eq = equilibrium_measure(&e, 32).unwrap();
        assert!((eq.capacity() - 0.5).abs() < 1e-14);
        assert!((eq.density(0.3) - 1.0 / (PI * (1.0 - 0.09f64).sqrt())).abs() < 1e-13);
        assert!((eq.green(c(2.0)) - (2.0 + 3f64.sqrt()).ln()).abs() < 1e-12);
        assert!((eq.cdf(0.0) - 0.5).abs() < 1e-14);
        // arcsine CDF: ½ + asin(x)/π
        assert!((eq.cdf(0.6) - (0.5 + 0.6f64.asin() / PI)).abs() < 1e-13);
    }

    #[test]
    fn shifted_and_scaled_interval() {
        let e = GapSet::interval(1.0, 5.0).unwrap();
        let eq = equilibrium_measure(&e, 32).unwrap();
        assert!((eq.capacity() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn symmetric_two_band_capacity() {
        let e = GapSet::new(-1.0, 1.0, vec![Gap::new(-0.2, 0.2)]).unwrap();
        let eq = equilibrium_measure(&e, 32).unwrap();
        assert!((eq.capacity() - 0.96f64.sqrt() / 2.0).abs() < 1e-10);
        let m = eq.band_masses();
        assert!((m[0] - 0.5).abs() < 1e-12 && (m[1] - 0.5).abs() < 1e-12);
        assert!(eq.green(c(0.0)) > 0.0);
        assert!(eq.green(c(0.6)).abs() < 1e-10);
    }
}
