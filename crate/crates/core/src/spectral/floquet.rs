use num_complex::Complex64;

use super::gapset::{Gap, GapSet};
use crate::error::{Error, Result};
use crate::jacobi::{bloch_matrix, transfer_matrix, JacobiOperator};
use crate::linalg::{symmetric_eigenvalues, Mat2};

fn period(op: &JacobiOperator) -> Result<usize> {
    op.period()
        .ok_or(Error::UnsupportedTopology("Floquet theory needs a periodic operator"))
}

/// Transfer matrix over one period starting at `site`.
pub fn monodromy(op: &JacobiOperator, z: Complex64, site: i64) -> Result<Mat2> {
    let p = period(op)? as i64;
    Ok(transfer_matrix(op, z, site, site + p)?.matrix)
}

/// Floquet discriminant `Δ(z) = tr` of the monodromy matrix.
pub fn discriminant(op: &JacobiOperator, z: Complex64) -> Result<Complex64> {
    Ok(monodromy(op, z, 0)?.trace())
}

/// Spectrum of a periodic operator: the band edges are the periodic and
/// antiperiodic eigenvalues, and gaps narrower than `1e−10 (Ē − E̲)` are
/// dropped as closed.
pub fn periodic_spectrum(op: &JacobiOperator) -> Result<GapSet> {
    let p = period(op)?;
    let mut edges = symmetric_eigenvalues(bloch_matrix(op, 1.0)?);
    edges.extend(symmetric_eigenvalues(bloch_matrix(op, -1.0)?));
    edges.sort_by(f64::total_cmp);
    let (lo, hi) = (edges[0], edges[2 * p - 1]);
    let a_min = op.a_values().iter().copied().fold(f64::INFINITY, f64::min);
    let tol = 1e-8 * ((1.0 + op.sup_norm()) / a_min).powi(p as i32);
    for (k, &e) in edges.iter().enumerate() {
        // Periodic edges have Δ = 2, antiperiodic Δ = −2 (up to parity of p).
        let d = discriminant(op, e.into())?.re;
        let dev = (d.abs() - 2.0).abs();
        if dev > tol {
            let (left, right) = (
                edges.get(k.wrapping_sub(1)).copied().unwrap_or(f64::NEG_INFINITY),
                edges.get(k + 1).copied().unwrap_or(f64::INFINITY),
            );
            return Err(Error::RootFinding(format!(
                "band edge {k} at {e} has |Δ| = {} (bracketed by {left} and {right})",
                d.abs()
            )));
        }
    }
    let gaps = (0..p - 1)
        .map(|k| Gap::new(edges[2 * k + 1], edges[2 * k + 2]))
        .filter(|g| g.width() > 1e-10 * (hi - lo))
        .collect();
    GapSet::new(lo, hi, gaps)
}
