use nalgebra::DMatrix;

use super::operator::{JacobiOperator, Sequence, Topology};
use crate::error::{Error, Result};

/// `(Pu)_n = −a_{n−1} u_{n−1} + a_n u_{n+1}`, indexed like [`apply_jacobi`].
///
/// [`apply_jacobi`]: super::operator::apply_jacobi
pub fn lax_p_apply(op: &JacobiOperator, u: &[f64]) -> Result<Vec<f64>> {
    op.check_sequence(u.len())?;
    let n0 = op.first_site();
    let len = u.len() as i64;
    let get = |n: i64| -> f64 {
        match op.topology() {
            Topology::Periodic => u[n.rem_euclid(len) as usize],
            Topology::Window { .. } => {
                let i = n - n0;
                if (0..len).contains(&i) {
                    u[i as usize]
                } else {
                    0.0
                }
            }
        }
    };
    Ok((0..len)
        .map(|i| {
            let n = n0 + i;
            -op.a(n - 1) * get(n - 1) + op.a(n) * get(n + 1)
        })
        .collect())
}

fn require_periodic(op: &JacobiOperator) -> Result<usize> {
    op.period()
        .ok_or(Error::UnsupportedTopology("a periodic operator is required"))
}

/// The `p×p` matrix of `J` on sequences with `u_{n+p} = sign · u_n`
/// (`sign = 1` periodic, `sign = −1` antiperiodic).
pub fn bloch_matrix(op: &JacobiOperator, sign: f64) -> Result<DMatrix<f64>> {
    let p = require_periodic(op)?;
    let mut m = DMatrix::zeros(p, p);
    for n in 0..p {
        m[(n, n)] += op.b(n as i64);
        let a = op.a(n as i64);
        let (j, s) = if n + 1 == p { (0, sign) } else { (n + 1, 1.0) };
        m[(n, j)] += s * a;
        m[(j, n)] += s * a;
    }
    Ok(m)
}

/// The periodic realization of `J`.
pub fn periodic_matrix(op: &JacobiOperator) -> Result<DMatrix<f64>> {
    bloch_matrix(op, 1.0)
}

/// The periodic realization of `P`; skew-symmetric by construction.
pub fn periodic_p_matrix(op: &JacobiOperator) -> Result<DMatrix<f64>> {
    let p = require_periodic(op)?;
    let mut m = DMatrix::zeros(p, p);
    for n in 0..p {
        let a = op.a(n as i64);
        let j = (n + 1) % p;
        m[(n, j)] += a;
        m[(j, n)] -= a;
    }
    Ok(m)
}

/// `‖(J(t+h) − J(t−h))/2h − [P(t), J(t)]‖_max` from three periodic snapshots.
pub fn lax_residual(before: &JacobiOperator, at: &JacobiOperator, after: &JacobiOperator, h: f64) -> Result<f64> {
    let jm = periodic_matrix(before)?;
    let j = periodic_matrix(at)?;
    let jp = periodic_matrix(after)?;
    if jm.shape() != j.shape() || jp.shape() != j.shape() {
        return Err(Error::Dimension {
            expected: j.nrows(),
            got: jm.nrows().max(jp.nrows()),
        });
    }
    let p = periodic_p_matrix(at)?;
    let diff = (jp - jm) / (2.0 * h) - (&p * &j - &j * &p);
    Ok(diff.amax())
}

/// Largest deviation, over the interior of `u`, between `Pu` and the
/// restricted form `2a Su − (z − b)u`. Vanishes when `Ju = zu` there.
#[must_use]
pub fn restriction_residual(op: &JacobiOperator, z: f64, u: &Sequence<f64>) -> f64 {
    let mut worst = 0.0_f64;
    for n in u.start + 1..u.end() - 1 {
        let (um, u0, up) = (
            u.values[(n - 1 - u.start) as usize],
            u.values[(n - u.start) as usize],
            u.values[(n + 1 - u.start) as usize],
        );
        let pu = -op.a(n - 1) * um + op.a(n) * up;
        let restricted = 2.0 * op.a(n) * up - (z - op.b(n)) * u0;
        worst = worst.max((pu - restricted).abs());
    }
    worst
}
