//! Quadrature rules and cosine-series helpers.

use std::f64::consts::PI;

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
#[must_use]
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n > 0, "at least one node");
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            // P_n and P_{n-1} are now p1 and p0.
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

/// Chebyshev angles `θ_k = (k + ½)π/n`, `k = 0..n`.
#[must_use]
pub fn chebyshev_angles(n: usize) -> Vec<f64> {
    (0..n).map(|k| (k as f64 + 0.5) * PI / n as f64).collect()
}

/// Cosine-series coefficients `c_m` of `f(θ) = c_0 + Σ_{m≥1} c_m cos(mθ)`
/// from samples at [`chebyshev_angles`].
#[must_use]
pub fn cosine_coefficients(samples: &[f64]) -> Vec<f64> {
    let n = samples.len();
    let angles = chebyshev_angles(n);
    (0..n)
        .map(|m| {
            let s: f64 = samples
                .iter()
                .zip(&angles)
                .map(|(f, th)| f * (m as f64 * th).cos())
                .sum();
            if m == 0 {
                s / n as f64
            } else {
                2.0 * s / n as f64
            }
        })
        .collect()
}

/// `∫_0^θ f(s) ds` for a cosine series `f`.
#[must_use]
pub fn cosine_series_integral(coeffs: &[f64], theta: f64) -> f64 {
    let mut acc = coeffs.first().copied().unwrap_or(0.0) * theta;
    for (m, c) in coeffs.iter().enumerate().skip(1) {
        acc += c * (m as f64 * theta).sin() / m as f64;
    }
    acc
}

/// Evaluates a cosine series at `θ`.
#[must_use]
pub fn cosine_series_value(coeffs: &[f64], theta: f64) -> f64 {
    coeffs
        .iter()
        .enumerate()
        .map(|(m, c)| c * (m as f64 * theta).cos())
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_integrates_polynomials_exactly() {
        for n in [1, 2, 5, 16, 33] {
            let (x, w) = gauss_legendre(n);
            let deg = 2 * n - 1;
            let q: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg as i32 - 1)).sum();
            let exact = if (deg - 1) % 2 == 0 { 2.0 / deg as f64 } else { 0.0 };
            assert!((q - exact).abs() < 1e-13, "n={n}: {q} vs {exact}");
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-13);
        }
    }

    #[test]
    fn cosine_series_roundtrip() {
        let f = |t: f64| 1.0 / (2.0 + t.cos());
        let angles = chebyshev_angles(64);
        let c = cosine_coefficients(&angles.iter().map(|&t| f(t)).collect::<Vec<_>>());
        assert!((cosine_series_value(&c, 0.4) - f(0.4)).abs() < 1e-13);
        // ∫_0^π dθ/(2+cosθ) = π/√3
        assert!((cosine_series_integral(&c, PI) - PI / 3f64.sqrt()).abs() < 1e-13);
    }
}
