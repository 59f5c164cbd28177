//! Comparison of the angle flow of `E` with the lifted flows of its
//! truncations `E^N`.
//!
//! Both flows start at the same point of the full torus. With
//! `δ_N = sup_j γ_j^{1/2} sup_φ |Ψ_j(φ) − Ψ̃^N_j(φ)|` and `L` the Lipschitz
//! bound of Ψ, Grönwall gives `D_N(t) ≤ (δ_N/L)(e^{Lt} − 1)`, which is the
//! envelope checked here with `m = 2L log 2 ≥ L`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::fit::linear_fit;
use crate::flow::{
    craig_report, integrate_dubrovin, integrate_field, torus_distance, AngleField, DubrovinField, LiftedField,
};
use crate::spectral::{AngleVector, GapSet, Truncation};

/// `E^N`, keeping the `n` longest gaps. The flag is set when `n` exceeded the
/// gap count and was clamped.
#[must_use]
pub fn truncate_gapset(e: &GapSet, n: usize) -> (Truncation, bool) {
    (e.truncated(n), n > e.len())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ApproximationRow {
    /// Requested truncation level.
    pub n: usize,
    pub kept: Vec<usize>,
    pub clamped: bool,
    /// `D_N(t) = sup_{s ≤ t} d(φ̃^N(s), φ(s))` on the time grid.
    pub distance: Vec<f64>,
    /// `K_N` and slope of the fit `log D_N(t) ≈ log K_N + slope·t` over the
    /// positive samples; both zero when the flows coincide.
    pub k: f64,
    pub slope: f64,
    /// `δ_N / L`, with the sup over the torus taken on a sample grid.
    pub field_gap: f64,
    /// Whether `D_N(t) ≤ 2 (δ_N/L) e^{mt}` at every grid time.
    pub within_envelope: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ApproximationReport {
    pub times: Vec<f64>,
    pub lipschitz: f64,
    /// `m = 2L log 2`.
    pub m: f64,
    pub rows: Vec<ApproximationRow>,
}

/// Kronecker points on the torus, deterministic and equidistributed.
fn torus_samples(dim: usize, count: usize) -> Vec<Vec<f64>> {
    let primes = [2.0, 3.0, 5.0, 7.0, 11.0, 13.0, 17.0, 19.0, 23.0, 29.0, 31.0, 37.0];
    (0..count)
        .map(|i| {
            (0..dim)
                .map(|j| {
                    let step = f64::sqrt(primes[j % primes.len()] + (j / primes.len()) as f64 * 41.0);
                    2.0 * PI * ((i as f64 + 0.5) * step).fract() - PI
                })
                .collect()
        })
        .collect()
}

fn field_gap(full: &DubrovinField, lifted: &LiftedField, e: &GapSet, samples: &[Vec<f64>]) -> f64 {
    let g = e.len();
    let (mut a, mut b) = (vec![0.0; g], vec![0.0; g]);
    let mut sup = vec![0.0_f64; g];
    for phi in samples {
        full.eval(phi, &mut a);
        lifted.eval(phi, &mut b);
        for j in 0..g {
            sup[j] = sup[j].max((a[j] - b[j]).abs());
        }
    }
    (0..g)
        .map(|j| e.gamma(j).sqrt() * sup[j].min(2.0 * PI))
        .fold(0.0, f64::max)
}

/// Runs the comparison for each truncation level in `levels` on the
/// nondecreasing, nonnegative `times`.
pub fn approximation_experiment(
    e: &GapSet,
    f: &AngleVector,
    levels: &[usize],
    times: &[f64],
    tol: f64,
) -> Result<ApproximationReport> {
    let positive = times.iter().filter(|&&t| t > 0.0).count();
    if positive < 2 {
        return Err(Error::TooFewSamples {
            needed: 2,
            got: positive,
        });
    }
    let lipschitz = craig_report(e).lipschitz_bound;
    let m = 2.0 * lipschitz * 2f64.ln();
    let reference = integrate_dubrovin(e, f, times, tol)?;
    let full = DubrovinField::new(e.clone());
    let samples = torus_samples(e.len(), 4096);
    let mut rows = Vec::with_capacity(levels.len());
    for &n in levels {
        let (trunc, clamped) = truncate_gapset(e, n);
        let lifted = LiftedField::new(e.clone(), n);
        let traj = integrate_field(&lifted, f, times, tol)?;
        let mut running = 0.0_f64;
        let mut distance = Vec::with_capacity(times.len());
        for (x, y) in traj.angles.iter().zip(&reference.angles) {
            running = running.max(torus_distance(e, x, y)?);
            distance.push(running);
        }
        let (ts, logs): (Vec<f64>, Vec<f64>) = times
            .iter()
            .zip(&distance)
            .filter(|(&t, &d)| t > 0.0 && d > 0.0)
            .map(|(&t, &d)| (t, d.ln()))
            .unzip();
        let (k, slope) = if ts.len() >= 2 {
            let (c, s) = linear_fit(&ts, &logs);
            (c.exp(), s)
        } else {
            (0.0, 0.0)
        };
        let gap = if lipschitz > 0.0 {
            field_gap(&full, &lifted, e, &samples) / lipschitz
        } else {
            0.0
        };
        let within_envelope = times
            .iter()
            .zip(&distance)
            .all(|(&t, &d)| d <= 2.0 * gap * (m * t).exp() + 1e-12);
        rows.push(ApproximationRow {
            n,
            kept: trunc.kept,
            clamped,
            distance,
            k,
            slope,
            field_gap: gap,
            within_envelope,
        });
    }
    Ok(ApproximationReport {
        times: times.to_vec(),
        lipschitz,
        m,
        rows,
    })
}
