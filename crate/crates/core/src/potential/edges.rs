//! Band edges of a gap set in the variable `s = (x − c)/h ∈ [−1, 1]`.
//!
//! Band `b` is `[e_{2b}, e_{2b+1}]` and gap `k` is `(e_{2k+1}, e_{2k+2})`.
//! On an interval `[lo, hi]` with midpoint `m` and half-width `c`, bands use
//! `s = m + c cos θ` and gaps `s = m − c cos θ`, so that on a gap `θ = 0` is
//! the left edge. In both cases `ds/√|R(s)| = ±dθ/√|R_other(s)|`, where
//! `R_other` omits the two edges of the interval and is smooth on it.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::spectral::GapSet;

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct ScaledEdges {
    pub center: f64,
    pub half: f64,
    pub e: Vec<f64>,
}

impl ScaledEdges {
    pub fn new(set: &GapSet) -> Self {
        let center = 0.5 * (set.lower() + set.upper());
        let half = 0.5 * set.span();
        let mut e = vec![-1.0];
        for g in set.gaps() {
            e.push((g.lower - center) / half);
            e.push((g.upper - center) / half);
        }
        e.push(1.0);
        Self { center, half, e }
    }

    pub fn genus(&self) -> usize {
        self.e.len() / 2 - 1
    }

    pub fn to_s(&self, x: f64) -> f64 {
        (x - self.center) / self.half
    }

    pub fn to_x(&self, s: f64) -> f64 {
        self.center + self.half * s
    }

    /// Midpoint and half-width of band `b`.
    pub fn band(&self, b: usize) -> (f64, f64) {
        let (lo, hi) = (self.e[2 * b], self.e[2 * b + 1]);
        (0.5 * (lo + hi), 0.5 * (hi - lo))
    }

    /// Midpoint and half-width of gap `k`.
    pub fn gap(&self, k: usize) -> (f64, f64) {
        let (lo, hi) = (self.e[2 * k + 1], self.e[2 * k + 2]);
        (0.5 * (lo + hi), 0.5 * (hi - lo))
    }

    pub fn band_point(&self, b: usize, theta: f64) -> f64 {
        let (m, c) = self.band(b);
        m + c * theta.cos()
    }

    pub fn gap_point(&self, k: usize, theta: f64) -> f64 {
        let (m, c) = self.gap(k);
        m - c * theta.cos()
    }

    /// `Π_{i ∉ {first, first+1}} |s − e_i|^{1/2}`.
    pub fn sqrt_other(&self, s: f64, first: usize) -> f64 {
        self.e
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != first && *i != first + 1)
            .map(|(_, e)| (s - e).abs())
            .product::<f64>()
            .sqrt()
    }

    /// `Π_i (s − e_i)` over all edges except the last, the factor left after
    /// dividing `R` by `s − 1`.
    pub fn r_without_top(&self, s: f64) -> f64 {
        self.e[..self.e.len() - 1].iter().map(|e| s - e).product()
    }

    /// `Π_i (s − e_i)` over all edges except the first.
    pub fn r_without_bottom(&self, s: f64) -> f64 {
        self.e[1..].iter().map(|e| s - e).product()
    }

    /// Sign `s_k` with `√R = s_k √|R|` on gap `k` for the branch of `√R`
    /// that is positive right of the hull.
    pub fn gap_sign(&self, k: usize) -> f64 {
        if (self.genus() - k) % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// Sign of `√R` left of the hull.
    pub fn left_sign(&self) -> f64 {
        if (self.genus() + 1) % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }
}

/// Evaluates `p(s) = Σ c_i s^i`.
pub(crate) fn poly(coeffs: &[f64], s: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * s + c)
}

/// Solves `m x = rhs` column by column after checking the 2-norm condition
/// number against `1e12`.
pub(crate) fn solve_checked(m: DMatrix<f64>, rhs: DMatrix<f64>) -> Result<DMatrix<f64>> {
    let sv = m.clone().svd(false, false).singular_values;
    let (max, min) = sv
        .iter()
        .fold((0.0_f64, f64::INFINITY), |(a, b), &s| (a.max(s), b.min(s)));
    let condition = max / min;
    if !(condition.is_finite() && condition <= 1e12) {
        return Err(Error::Geometry { condition });
    }
    m.lu().solve(&rhs).ok_or(Error::Geometry { condition })
}
