use num_complex::Complex64;

use super::weyl::weyl_vectors;
use crate::error::Result;
use crate::jacobi::{integrate_toda, JacobiOperator, TodaState};
use crate::linalg::Mat2;

/// `[[r(1,1), r(1,0)], [r(0,1), r(0,0)]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeylMMatrix(pub Mat2);

impl WeylMMatrix {
    /// Entry `r(i, j)` for `i, j ∈ {0, 1}`.
    #[must_use]
    pub fn r(&self, i: usize, j: usize) -> Complex64 {
        self.0 .0[1 - i][1 - j]
    }

    #[must_use]
    pub fn asymmetry(&self) -> f64 {
        (self.r(1, 0) - self.r(0, 1)).norm()
    }

    /// `M − K/(2a₀)` with `K` the off-diagonal ones matrix.
    ///
    /// This is the symmetrized product `(A₀(V₊V₋ᵀ + V₋V₊ᵀ)A₀ᵀ)/(2W)`, which
    /// obeys `∂_t M̃ = BM̃ + M̃Bᵀ` exactly. The resolvent block itself picks up
    /// the extra term `diag(2, −2)` because `r(1,0)` and `r(0,1)` use the
    /// ordered product of Weyl solutions.
    #[must_use]
    pub fn symmetrized(&self, a0: f64) -> Mat2 {
        let mut m = self.0;
        let d = Complex64::new(0.5 / a0, 0.0);
        m.0[0][1] -= d;
        m.0[1][0] -= d;
        m
    }
}

/// The M-matrix of `op` at site 0.
pub fn m_matrix(op: &JacobiOperator, z: Complex64) -> Result<WeylMMatrix> {
    let v = weyl_vectors(op, z, 0)?;
    let off = v.green_offdiag();
    Ok(WeylMMatrix(Mat2([[v.green_next(), off], [off, v.green_diag()]])))
}

/// `B(z) = [[z − b₁, −2a₀], [2a₀, −(z − b₀)]]`.
#[must_use]
pub fn flow_generator(op: &JacobiOperator, z: Complex64) -> Mat2 {
    let a0 = Complex64::new(2.0 * op.a(0), 0.0);
    Mat2([[z - op.b(1), -a0], [a0, -(z - op.b(0))]])
}

fn transpose(m: &Mat2) -> Mat2 {
    let x = m.0;
    Mat2([[x[0][0], x[1][0]], [x[0][1], x[1][1]]])
}

/// `‖(M̃(t+h) − M̃(t−h))/2h − (BM̃ + M̃Bᵀ)(t)‖_∞` from three snapshots.
pub fn m_matrix_flow_residual(
    before: &JacobiOperator,
    at: &JacobiOperator,
    after: &JacobiOperator,
    z: Complex64,
    h: f64,
) -> Result<f64> {
    let mm = m_matrix(before, z)?.symmetrized(before.a(0));
    let m0 = m_matrix(at, z)?.symmetrized(at.a(0));
    let mp = m_matrix(after, z)?.symmetrized(after.a(0));
    let b = flow_generator(at, z);
    let rhs = b.mul(&m0).0;
    let rhs_t = m0.mul(&transpose(&b)).0;
    let mut worst = 0.0_f64;
    for i in 0..2 {
        for j in 0..2 {
            let fd = (mp.0[i][j] - mm.0[i][j]) / (2.0 * h);
            worst = worst.max((fd - rhs[i][j] - rhs_t[i][j]).norm());
        }
    }
    Ok(worst)
}

/// The residual at `state`, integrating the lattice to `t ± h` at tolerance `tol`.
pub fn m_matrix_flow_residual_at(state: &TodaState, z: Complex64, h: f64, tol: f64) -> Result<f64> {
    let before = integrate_toda(state, state.t - h, tol)?;
    let after = integrate_toda(state, state.t + h, tol)?;
    m_matrix_flow_residual(&before.op, &state.op, &after.op, z, h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_m_matrix_is_symmetric_and_stationary() {
        let op = JacobiOperator::free();
        let z = Complex64::new(2.0, 0.0);
        let m = m_matrix(&op, z).unwrap();
        assert!(m.asymmetry() < 1e-14);
        assert!((m.r(0, 0) - m.r(1, 1)).norm() < 1e-14);
        let r = m_matrix_flow_residual(&op, &op, &op, z, 1e-3).unwrap();
        assert!(r < 1e-12, "{r}");
    }
}
