//! Small dense and tridiagonal linear-algebra kernels.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

/// A 2×2 complex matrix stored row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    #[must_use]
    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self([[one, zero], [zero, one]])
    }

    #[must_use]
    pub fn from_real(m: [[f64; 2]; 2]) -> Self {
        Self([[m[0][0].into(), m[0][1].into()], [m[1][0].into(), m[1][1].into()]])
    }

    #[must_use]
    pub fn mul(&self, rhs: &Self) -> Self {
        let a = &self.0;
        let b = &rhs.0;
        Self([
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ])
    }

    #[must_use]
    pub fn apply(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        let a = &self.0;
        [a[0][0] * v[0] + a[0][1] * v[1], a[1][0] * v[0] + a[1][1] * v[1]]
    }

    #[must_use]
    pub fn det(&self) -> Complex64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    #[must_use]
    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    /// Largest absolute entry.
    #[must_use]
    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|c| c.norm()).fold(0.0, f64::max)
    }

    #[must_use]
    pub fn scale(&self, s: f64) -> Self {
        let mut out = *self;
        for row in &mut out.0 {
            for c in row {
                *c *= s;
            }
        }
        out
    }
}

/// Sorted eigenvalues of a dense symmetric matrix.
#[must_use]
pub fn symmetric_eigenvalues(m: DMatrix<f64>) -> Vec<f64> {
    let mut ev: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Number of eigenvalues strictly below `x` of the symmetric tridiagonal
/// matrix with diagonal `diag` and off-diagonal `off` (Sturm count).
#[must_use]
pub fn sturm_count(diag: &[f64], off: &[f64], x: f64) -> usize {
    debug_assert_eq!(off.len() + 1, diag.len());
    let mut count = 0;
    let mut d = 1.0;
    for i in 0..diag.len() {
        let coupling = if i == 0 { 0.0 } else { off[i - 1] * off[i - 1] };
        d = diag[i] - x - coupling / d;
        if d == 0.0 {
            d = -f64::EPSILON * (1.0 + x.abs());
        }
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

/// All eigenvalues, sorted, of a symmetric tridiagonal matrix by the
/// implicit QL algorithm with Wilkinson shifts.
#[must_use]
pub fn tridiagonal_eigenvalues(diag: &[f64], off: &[f64]) -> Vec<f64> {
    let n = diag.len();
    debug_assert!(n == 0 || off.len() + 1 == n);
    let mut d = diag.to_vec();
    let mut e = vec![0.0; n];
    e[..n.saturating_sub(1)].copy_from_slice(&off[..n.saturating_sub(1)]);
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                break;
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(f64::total_cmp);
    d
}

/// Solves the complex tridiagonal system `T x = rhs` (Thomas algorithm),
/// where `T` has diagonal `diag`, and symmetric off-diagonal `off`.
#[must_use]
pub fn tridiagonal_solve(diag: &[Complex64], off: &[f64], rhs: &[Complex64]) -> Vec<Complex64> {
    let n = diag.len();
    let mut c = vec![Complex64::new(0.0, 0.0); n];
    let mut x = rhs.to_vec();
    let mut denom = diag[0];
    if n > 1 {
        c[0] = off[0] / denom;
    }
    x[0] /= denom;
    for i in 1..n {
        denom = diag[i] - off[i - 1] * c[i - 1];
        if i + 1 < n {
            c[i] = off[i] / denom;
        }
        x[i] = (x[i] - off[i - 1] * x[i - 1]) / denom;
    }
    for i in (0..n.saturating_sub(1)).rev() {
        let next = x[i + 1];
        x[i] -= c[i] * next;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ql_matches_dense_solver() {
        let diag = [0.3, -1.2, 0.7, 2.0, 0.1];
        let off = [0.5, 1.1, 0.2, 0.9];
        let mut m = DMatrix::zeros(5, 5);
        for i in 0..5 {
            m[(i, i)] = diag[i];
        }
        for i in 0..4 {
            m[(i, i + 1)] = off[i];
            m[(i + 1, i)] = off[i];
        }
        let dense = symmetric_eigenvalues(m);
        let ql = tridiagonal_eigenvalues(&diag, &off);
        for (x, y) in dense.iter().zip(&ql) {
            assert!((x - y).abs() < 1e-12, "{x} vs {y}");
        }
        for (k, ev) in ql.iter().enumerate() {
            assert_eq!(sturm_count(&diag, &off, ev - 1e-9), k);
        }
    }

    #[test]
    fn thomas_solves_free_chain() {
        let n = 50;
        let z = Complex64::new(0.3, 0.4);
        let diag = vec![-z; n];
        let off = vec![0.5; n - 1];
        let mut rhs = vec![Complex64::new(0.0, 0.0); n];
        rhs[10] = Complex64::new(1.0, 0.0);
        let x = tridiagonal_solve(&diag, &off, &rhs);
        for i in 0..n {
            let mut r = diag[i] * x[i];
            if i > 0 {
                r += off[i - 1] * x[i - 1];
            }
            if i + 1 < n {
                r += off[i] * x[i + 1];
            }
            assert!((r - rhs[i]).norm() < 1e-12);
        }
    }

    #[test]
    fn mat2_determinant_of_product() {
        let a = Mat2::from_real([[1.0, 2.0], [3.0, 4.0]]);
        let b = Mat2::from_real([[0.5, -1.0], [2.0, 0.0]]);
        let d = a.mul(&b).det() - a.det() * b.det();
        assert!(d.norm() < 1e-14);
    }
}
