//! Harmonic measures `ξ_j` of the bands to the right of gap `j`.
//!
//! `ξ_j` is the real part of an abelian integral of `q_j(s) ds/√R(s)` with
//! `deg q_j ≤ g − 1`. The branch of `√R` is positive right of the hull, so
//! on gap `k` it equals `s_k √|R|` with `s_k = (−1)^{g−k}`, and `q_j` is
//! fixed by `∫_{gap k} s_k q_j/√|R| ds = δ_{jk}`. On bands `√R` is imaginary
//! and `ξ_j` is constant (0 left of gap `j`, 1 right of it).

use nalgebra::DMatrix;

use super::edges::{poly, solve_checked, ScaledEdges};
use super::equilibrium::{gap_moments, EquilibriumData};
use crate::error::{Error, Result};
use crate::quad::{chebyshev_angles, cosine_coefficients, cosine_series_integral, cosine_series_value, gauss_legendre};

const EXTERIOR_NODES: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicMeasures {
    edges: ScaledEdges,
    /// `q_j`, ascending powers of `s`.
    q: Vec<Vec<f64>>,
    /// Cosine coefficients of `θ ↦ s_k q_j(s(θ))/√|R_other(s(θ))|` on gap `k`,
    /// indexed `[j][k]`.
    gap_series: Vec<Vec<Vec<f64>>>,
}

impl HarmonicMeasures {
    /// Uses the node count of `eq`.
    pub fn new(eq: &EquilibriumData) -> Result<Self> {
        let edges = eq.edges().clone();
        let n = eq.n_nodes();
        let g = edges.genus();
        if g == 0 {
            return Ok(Self {
                edges,
                q: Vec::new(),
                gap_series: Vec::new(),
            });
        }
        let mut lhs = gap_moments(&edges, g - 1, n);
        for k in 0..g {
            let sk = edges.gap_sign(k);
            for i in 0..g {
                lhs[(k, i)] *= sk;
            }
        }
        let sol = solve_checked(lhs, DMatrix::identity(g, g))?;
        let q: Vec<Vec<f64>> = (0..g).map(|j| sol.column(j).iter().copied().collect()).collect();
        let angles = chebyshev_angles(n);
        let gap_series = q
            .iter()
            .map(|qj| {
                (0..g)
                    .map(|k| {
                        let sk = edges.gap_sign(k);
                        let samples: Vec<f64> = angles
                            .iter()
                            .map(|&th| {
                                let s = edges.gap_point(k, th);
                                sk * poly(qj, s) / edges.sqrt_other(s, 2 * k + 1)
                            })
                            .collect();
                        cosine_coefficients(&samples)
                    })
                    .collect()
            })
            .collect();
        Ok(Self { edges, q, gap_series })
    }

    #[must_use]
    pub fn genus(&self) -> usize {
        self.q.len()
    }

    /// Coefficients of `q_j` in the scaled variable.
    #[must_use]
    pub fn q_coefficients(&self, j: usize) -> &[f64] {
        &self.q[j]
    }

    /// `ξ_j(s(θ)) − ξ_j(E_k⁻)` for `s(θ)` in gap `k`, `θ = 0` at the left edge.
    #[must_use]
    pub fn gap_increment(&self, j: usize, k: usize, theta: f64) -> f64 {
        cosine_series_integral(&self.gap_series[j][k], theta)
    }

    /// `d/dθ` of [`Self::gap_increment`].
    #[must_use]
    pub fn gap_increment_derivative(&self, j: usize, k: usize, theta: f64) -> f64 {
        cosine_series_value(&self.gap_series[j][k], theta)
    }

    /// Angle `θ ∈ [0, π]` of the point `x` of gap `k`.
    pub(crate) fn gap_angle(&self, k: usize, x: f64) -> f64 {
        let (m, c) = self.edges.gap(k);
        ((m - self.edges.to_s(x)) / c).clamp(-1.0, 1.0).acos()
    }

    /// `ξ_j(x)` for real `x`.
    pub fn xi(&self, j: usize, x: f64) -> Result<f64> {
        let g = self.genus();
        if j >= g {
            return Err(Error::Dimension {
                expected: g,
                got: j + 1,
            });
        }
        if !x.is_finite() {
            return Err(Error::Domain(format!("non-finite point {x}")));
        }
        let s = self.edges.to_s(x);
        let e = &self.edges.e;
        if s >= 1.0 {
            return Ok(1.0 + self.exterior(j, s));
        }
        if s <= -1.0 {
            return Ok(self.exterior(j, s));
        }
        for k in 0..g {
            let (lo, hi) = (e[2 * k + 1], e[2 * k + 2]);
            if s <= lo {
                return Ok(if k > j { 1.0 } else { 0.0 });
            }
            if s < hi {
                let base = if k > j { 1.0 } else { 0.0 };
                return Ok(base + self.gap_increment(j, k, self.gap_angle(k, x)));
            }
        }
        Ok(1.0)
    }

    /// `ξ_j(s) − ξ_j(±1)` outside the hull, with `t = ±(1 + u²)`.
    fn exterior(&self, j: usize, s: f64) -> f64 {
        let (nodes, weights) = gauss_legendre(EXTERIOR_NODES);
        let right = s >= 1.0;
        let top = (s.abs() - 1.0).sqrt();
        let mut acc = 0.0;
        for (x, w) in nodes.iter().zip(&weights) {
            let u = 0.5 * top * (x + 1.0);
            let (t, r) = if right {
                let t = 1.0 + u * u;
                (t, self.edges.r_without_top(t).abs())
            } else {
                let t = -1.0 - u * u;
                (t, self.edges.r_without_bottom(t).abs())
            };
            acc += 0.5 * top * w * 2.0 * poly(&self.q[j], t) / r.sqrt();
        }
        if right {
            acc
        } else {
            -self.edges.left_sign() * acc
        }
    }

    /// `dξ_j/dt` of the Abel image along `φ' = Ψ(φ)`, in the original time
    /// units: `2π h lead(q_j)` with `h` the half-length of the hull.
    #[must_use]
    pub fn frequency(&self, j: usize) -> f64 {
        let g = self.genus();
        2.0 * std::f64::consts::PI * self.edges.half * self.q[j][g - 1]
    }
}

/// `ξ_j(x)`.
pub fn xi_harmonic(geo: &HarmonicMeasures, j: usize, x: f64) -> Result<f64> {
    geo.xi(j, x)
}
