//! Weyl solutions, half-line m-functions and the diagonal Green's function.
//!
//! Solutions of `Ju = zu` are represented at a site `s` by the coordinates
//! `(u(s+1), a_s u(s))`. With `u₊` decaying at `+∞` and `u₋` at `−∞`,
//! `m₊ = −u₊(s+1)/(a_s u₊(s))` and `m₋ = u₋(s+1)/(a_s u₋(s))`; both are
//! Herglotz functions of `z`.

use num_complex::Complex64;

use super::floquet::monodromy;
use crate::error::{Error, Result};
use crate::jacobi::{one_step, JacobiOperator, Topology};
use crate::linalg::Mat2;

/// Which half-line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Plus,
    Minus,
}

/// Coordinates of the two Weyl solutions at `site`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeylVectors {
    pub site: i64,
    pub a: f64,
    pub plus: [Complex64; 2],
    pub minus: [Complex64; 2],
}

impl WeylVectors {
    #[must_use]
    pub fn m(&self, side: Side) -> Complex64 {
        match side {
            Side::Plus => -self.plus[0] / self.plus[1],
            Side::Minus => self.minus[0] / self.minus[1],
        }
    }

    /// `W(u₋, u₊) = a_s (u₋(s) u₊(s+1) − u₋(s+1) u₊(s))` in coordinates.
    #[must_use]
    pub fn wronskian(&self) -> Complex64 {
        self.minus[1] * self.plus[0] - self.minus[0] * self.plus[1]
    }

    /// `r(s, s)`.
    #[must_use]
    pub fn green_diag(&self) -> Complex64 {
        self.plus[1] * self.minus[1] / (self.a * self.a * self.wronskian())
    }

    /// `r(s+1, s+1)`.
    #[must_use]
    pub fn green_next(&self) -> Complex64 {
        self.plus[0] * self.minus[0] / self.wronskian()
    }

    /// `r(s+1, s) = r(s, s+1)`.
    #[must_use]
    pub fn green_offdiag(&self) -> Complex64 {
        self.plus[0] * self.minus[1] / (self.a * self.wronskian())
    }
}

fn normalized(v: [Complex64; 2]) -> [Complex64; 2] {
    let n = v[0].norm().max(v[1].norm());
    [v[0] / n, v[1] / n]
}

/// Eigenvalues ordered by increasing modulus and the corresponding
/// eigenvectors of a unimodular 2×2 matrix.
fn unimodular_eigen(m: &Mat2) -> Result<([Complex64; 2], [[Complex64; 2]; 2])> {
    let tr = m.trace();
    let disc = (tr * tr - 4.0 * m.det()).sqrt();
    let (r1, r2) = (0.5 * (tr + disc), 0.5 * (tr - disc));
    let big = if r1.norm() >= r2.norm() { r1 } else { r2 };
    let small = m.det() / big;
    if small.norm() >= 1.0 - 1e-12 * big.norm().max(1.0) || !small.is_finite() {
        return Err(Error::Domain(
            "energy lies on the spectrum: no decaying Weyl solution".into(),
        ));
    }
    let vec = |rho: Complex64| {
        let x = m.0;
        let va = [x[0][1], rho - x[0][0]];
        let vb = [rho - x[1][1], x[1][0]];
        let na = va[0].norm().max(va[1].norm());
        let nb = vb[0].norm().max(vb[1].norm());
        normalized(if na >= nb { va } else { vb })
    };
    Ok(([small, big], [vec(small), vec(big)]))
}

fn inverse_unimodular(m: &Mat2) -> Mat2 {
    let x = m.0;
    let d = m.det();
    Mat2([[x[1][1] / d, -x[0][1] / d], [-x[1][0] / d, x[0][0] / d]])
}

/// Weyl solution coordinates at `site`.
///
/// Periodic operators use the Floquet eigenvectors of the monodromy matrix.
/// Windows are constant outside their stored range, so the Weyl solution is
/// the exact eigenvector of the constant one-step matrix there and is carried
/// to `site` in the stable direction (backward for `u₊`, forward for `u₋`).
pub fn weyl_vectors(op: &JacobiOperator, z: Complex64, site: i64) -> Result<WeylVectors> {
    if !z.is_finite() {
        return Err(Error::Domain(format!("non-finite energy {z}")));
    }
    let (plus, minus) = match op.topology() {
        Topology::Periodic => {
            let (_, v) = unimodular_eigen(&monodromy(op, z, site)?)?;
            (v[0], v[1])
        }
        Topology::Window { .. } => {
            let right = site.max(op.last_site());
            let (_, v) = unimodular_eigen(&one_step(op, z, right))?;
            let mut plus = v[0];
            for n in (site..right).rev() {
                plus = normalized(inverse_unimodular(&one_step(op, z, n)).apply(plus));
            }
            let left = site.min(op.first_site() - 1);
            let (_, v) = unimodular_eigen(&one_step(op, z, left))?;
            let mut minus = v[1];
            for n in left..site {
                minus = normalized(one_step(op, z, n).apply(minus));
            }
            (plus, minus)
        }
    };
    Ok(WeylVectors {
        site,
        a: op.a(site),
        plus,
        minus,
    })
}

/// `m_±(S^site J; z)`.
pub fn weyl_m(op: &JacobiOperator, z: Complex64, side: Side, site: i64) -> Result<Complex64> {
    Ok(weyl_vectors(op, z, site)?.m(side))
}

/// `m_±` by the truncated continued fraction: the half-line is cut at depth
/// `d` with a Dirichlet condition, and `d` is doubled until successive values
/// agree to `1e−12` relative, or `max_depth` is exceeded.
pub fn weyl_m_continued_fraction(
    op: &JacobiOperator,
    z: Complex64,
    side: Side,
    site: i64,
    max_depth: usize,
) -> Result<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let eval = |depth: i64| -> Complex64 {
        match side {
            Side::Plus => {
                let mut v = [zero, one];
                for n in (site..site + depth).rev() {
                    v = normalized(inverse_unimodular(&one_step(op, z, n)).apply(v));
                }
                -v[0] / v[1]
            }
            Side::Minus => {
                let mut v = [one, zero];
                for n in site - depth..site {
                    v = normalized(one_step(op, z, n).apply(v));
                }
                v[0] / v[1]
            }
        }
    };
    let mut depth = 8_usize;
    let mut previous = eval(depth as i64);
    loop {
        depth *= 2;
        let last = eval(depth as i64);
        if (last - previous).norm() <= 1e-12 * last.norm().max(1.0) {
            return Ok(last);
        }
        if depth >= max_depth {
            return Err(Error::Convergence { depth, last, previous });
        }
        previous = last;
    }
}

/// `r(n, n; z)` from the Weyl solutions at `n`.
pub fn green_diag(op: &JacobiOperator, z: Complex64, n: i64) -> Result<Complex64> {
    Ok(weyl_vectors(op, z, n)?.green_diag())
}

/// `r(n, n)` and `r(n+1, n+1)` assembled from `m_±` of the `n`-shifted
/// operator: `−1/(a_n²(m₊ + m₋))` and `m₊m₋/(m₊ + m₋)`.
pub fn green_from_m(op: &JacobiOperator, z: Complex64, n: i64) -> Result<(Complex64, Complex64)> {
    let shifted = op.shifted(n);
    let v = weyl_vectors(&shifted, z, 0)?;
    let (mp, mm) = (v.m(Side::Plus), v.m(Side::Minus));
    let a = shifted.a(0);
    Ok((-1.0 / (a * a * (mp + mm)), mp * mm / (mp + mm)))
}

/// `max |Re r(n, n; x + i0)|` over `|n| ≤ n_sites` and `n_samples` interior
/// points per band of `e`. The boundary value is the Richardson
/// extrapolation `2 r(x + iε/2) − r(x + iε)`, which removes the `O(ε)` term.
pub fn reflectionless_residual(
    op: &JacobiOperator,
    e: &super::gapset::GapSet,
    n_sites: i64,
    n_samples: usize,
    eps: f64,
) -> Result<f64> {
    if !(eps > 0.0) {
        return Err(Error::Domain(format!("height must be positive, got {eps}")));
    }
    let mut worst = 0.0_f64;
    for band in e.bands() {
        for k in 0..n_samples {
            let x = band.lower + band.width() * (k as f64 + 0.5) / n_samples as f64;
            for n in -n_sites..=n_sites {
                let coarse = green_diag(op, Complex64::new(x, eps), n)?;
                let fine = green_diag(op, Complex64::new(x, 0.5 * eps), n)?;
                worst = worst.max((2.0 * fine - coarse).re.abs());
            }
        }
    }
    Ok(worst)
}
