use std::ops::{Mul, Sub};

use num_complex::Complex64;

use super::operator::{JacobiOperator, Sequence};
use crate::error::{Error, Result};
use crate::linalg::Mat2;

/// Product of one-step transfer matrices acting on the coordinates
/// `(u(n+1), a_n u(n))` of solutions of `Ju = zu`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferStep {
    pub matrix: Mat2,
    pub n_from: i64,
    pub n_to: i64,
}

impl TransferStep {
    /// Maps coordinates at `n_from` to coordinates at `n_to`.
    #[must_use]
    pub fn apply(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        self.matrix.apply(v)
    }

    #[must_use]
    pub fn det(&self) -> Complex64 {
        self.matrix.det()
    }
}

/// The one-step matrix taking coordinates at site `n` to site `n + 1`:
/// `(1/a_{n+1}) [[z − b_{n+1}, −1], [a_{n+1}², 0]]`.
#[must_use]
pub fn one_step(op: &JacobiOperator, z: Complex64, n: i64) -> Mat2 {
    let a = op.a(n + 1);
    let b = op.b(n + 1);
    let zero = Complex64::new(0.0, 0.0);
    Mat2([
        [(z - b) / a, Complex64::new(-1.0 / a, 0.0)],
        [Complex64::new(a, 0.0), zero],
    ])
}

/// `S_{n_to−1} ⋯ S_{n_from}`.
pub fn transfer_matrix(op: &JacobiOperator, z: Complex64, n_from: i64, n_to: i64) -> Result<TransferStep> {
    if n_to < n_from {
        return Err(Error::Domain(format!(
            "transfer matrix needs n_to >= n_from, got {n_from} -> {n_to}"
        )));
    }
    let mut m = Mat2::identity();
    for n in n_from..n_to {
        m = one_step(op, z, n).mul(&m);
    }
    Ok(TransferStep {
        matrix: m,
        n_from,
        n_to,
    })
}

/// The solution of `Ju = zu` with the given values at `start` and
/// `start + 1`, generated on `len` sites by the three-term recurrence.
#[must_use]
pub fn solve_recurrence(op: &JacobiOperator, z: f64, start: i64, u0: f64, u1: f64, len: usize) -> Sequence<f64> {
    let mut v = vec![u0, u1];
    v.truncate(len);
    while v.len() < len {
        let k = v.len();
        let n = start + k as i64 - 1;
        v.push(((z - op.b(n)) * v[k - 1] - op.a(n - 1) * v[k - 2]) / op.a(n));
    }
    Sequence::new(start, v)
}

/// `W = a_s (u(s) v(s+1) − u(s+1) v(s))`.
pub fn wronskian<T>(op: &JacobiOperator, u: &Sequence<T>, v: &Sequence<T>, site: i64) -> Result<T>
where
    T: Copy + Mul<Output = T> + Sub<Output = T> + Mul<f64, Output = T>,
{
    let missing = || Error::Domain(format!("sequences must be defined at sites {site} and {}", site + 1));
    let (u0, u1) = (u.get(site).ok_or_else(missing)?, u.get(site + 1).ok_or_else(missing)?);
    let (v0, v1) = (v.get(site).ok_or_else(missing)?, v.get(site + 1).ok_or_else(missing)?);
    Ok((u0 * v1 - u1 * v0) * op.a(site))
}

/// Per-site averages `(1/p) Σ_{n=0}^{p−1} ⟨δ_n, J^k δ_n⟩` of the operator on
/// ℤ, for `k = 1..=k_max`.
pub fn conserved_traces(op: &JacobiOperator, k_max: usize) -> Result<Vec<f64>> {
    let p = op
        .period()
        .ok_or(Error::UnsupportedTopology("conserved traces need a periodic operator"))?;
    if k_max == 0 || k_max > 2 * p {
        return Err(Error::Domain(format!("k_max must lie in 1..={}, got {k_max}", 2 * p)));
    }
    let reach = k_max as i64;
    let width = 2 * k_max + 1;
    let mut sums = vec![0.0; k_max];
    for n in 0..p as i64 {
        let lo = n - reach;
        let mut u = vec![0.0; width];
        u[k_max] = 1.0;
        for sum in sums.iter_mut() {
            let mut next = vec![0.0; width];
            for (i, slot) in next.iter_mut().enumerate() {
                let m = lo + i as i64;
                let mut acc = op.b(m) * u[i];
                if i + 1 < width {
                    acc += op.a(m) * u[i + 1];
                }
                if i > 0 {
                    acc += op.a(m - 1) * u[i - 1];
                }
                *slot = acc;
            }
            u = next;
            *sum += u[k_max];
        }
    }
    Ok(sums.into_iter().map(|s| s / p as f64).collect())
}
