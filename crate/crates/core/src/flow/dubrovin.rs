//! Integration of `φ' = Ψ(φ)` on the torus.
//!
//! Angles are integrated as real numbers (Ψ is 2π-periodic in each angle)
//! and reduced only on output. Every component of Ψ is positive, so each
//! unwrapped angle must increase on every accepted step.

use super::psi::{mu_of_angle, psi_from_mu};
use crate::error::{Error, Result};
use crate::ode::{Integrator, OdeSystem};
use crate::spectral::{divisor_from_angles, reduce_angle, AngleVector, DirichletDivisor, GapSet, Truncation};

/// A vector field on the torus over the gaps of [`AngleField::set`].
pub trait AngleField {
    fn set(&self) -> &GapSet;

    fn eval(&self, phi: &[f64], out: &mut [f64]);
}

/// Ψ for a gap set.
#[derive(Debug, Clone)]
pub struct DubrovinField {
    set: GapSet,
}

impl DubrovinField {
    #[must_use]
    pub fn new(set: GapSet) -> Self {
        Self { set }
    }
}

impl AngleField for DubrovinField {
    fn set(&self) -> &GapSet {
        &self.set
    }

    fn eval(&self, phi: &[f64], out: &mut [f64]) {
        let mu: Vec<f64> = phi
            .iter()
            .enumerate()
            .map(|(j, &p)| mu_of_angle(&self.set, j, p))
            .collect();
        psi_from_mu(&self.set, &mu, out);
    }
}

/// `Ψ̃^N` on the full torus: kept angles move by the field of the truncated
/// set evaluated on the kept angles, the others by the full Ψ.
#[derive(Debug, Clone)]
pub struct LiftedField {
    full: GapSet,
    truncation: Truncation,
}

impl LiftedField {
    #[must_use]
    pub fn new(full: GapSet, n: usize) -> Self {
        let truncation = full.truncated(n);
        Self { full, truncation }
    }

    #[must_use]
    pub fn truncation(&self) -> &Truncation {
        &self.truncation
    }
}

impl AngleField for LiftedField {
    fn set(&self) -> &GapSet {
        &self.full
    }

    fn eval(&self, phi: &[f64], out: &mut [f64]) {
        let full = DubrovinField { set: self.full.clone() };
        full.eval(phi, out);
        let kept = &self.truncation.kept;
        let sub_phi: Vec<f64> = kept.iter().map(|&j| phi[j]).collect();
        let mu: Vec<f64> = sub_phi
            .iter()
            .enumerate()
            .map(|(i, &p)| mu_of_angle(&self.truncation.set, i, p))
            .collect();
        let mut sub = vec![0.0; kept.len()];
        psi_from_mu(&self.truncation.set, &mu, &mut sub);
        for (i, &j) in kept.iter().enumerate() {
            out[j] = sub[i];
        }
    }
}

struct FieldSystem<'a, F: AngleField>(&'a F);

impl<F: AngleField> OdeSystem for FieldSystem<'_, F> {
    fn dim(&self) -> usize {
        self.0.set().len()
    }

    fn rhs(&self, _t: f64, y: &[f64], dy: &mut [f64]) {
        self.0.eval(y, dy);
    }

    fn admissible(&self, y: &[f64]) -> bool {
        y.iter().all(|v| v.is_finite())
    }
}

/// Sampled solution of the angle flow; `angles` are unwrapped.
#[derive(Debug, Clone, PartialEq)]
pub struct DubrovinTrajectory {
    pub times: Vec<f64>,
    pub angles: Vec<AngleVector>,
}

impl DubrovinTrajectory {
    #[must_use]
    pub fn len(&self) -> usize {
        self.times.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Angles at sample `i`, reduced to `(−π, π]`.
    #[must_use]
    pub fn reduced(&self, i: usize) -> AngleVector {
        AngleVector(self.angles[i].0.iter().map(|&p| reduce_angle(p)).collect())
    }

    pub fn divisor(&self, e: &GapSet, i: usize) -> Result<DirichletDivisor> {
        divisor_from_angles(e, &self.reduced(i))
    }
}

fn check_start(e: &GapSet, phi0: &AngleVector) -> Result<()> {
    if phi0.len() != e.len() {
        return Err(Error::Dimension {
            expected: e.len(),
            got: phi0.len(),
        });
    }
    if let Some(p) = phi0.0.iter().find(|p| !p.is_finite()) {
        return Err(Error::Domain(format!("non-finite angle {p}")));
    }
    Ok(())
}

/// Integrates `field` from `φ(0) = phi0` and samples at `times`, which must be
/// nondecreasing and nonnegative.
pub fn integrate_field<F: AngleField>(
    field: &F,
    phi0: &AngleVector,
    times: &[f64],
    tol: f64,
) -> Result<DubrovinTrajectory> {
    check_start(field.set(), phi0)?;
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    if let Some(w) = times.windows(2).find(|w| w[1] < w[0]) {
        return Err(Error::Domain(format!("sample times decrease: {} then {}", w[0], w[1])));
    }
    if times.first().is_some_and(|&t| t < 0.0 || !t.is_finite()) {
        return Err(Error::Domain("sample times must start at a finite t ≥ 0".into()));
    }
    let sys = FieldSystem(field);
    let mut integ = Integrator::new(tol);
    let mut t = 0.0;
    let mut y = phi0.0.clone();
    let mut angles = Vec::with_capacity(times.len());
    for &target in times {
        integ.advance_observed(&sys, &mut t, &mut y, target, |t_new, old, new| {
            match old.iter().zip(new).position(|(a, b)| b < a) {
                Some(index) => Err(Error::Monotonicity { index, t: t_new }),
                None => Ok(()),
            }
        })?;
        angles.push(AngleVector(y.clone()));
    }
    Ok(DubrovinTrajectory {
        times: times.to_vec(),
        angles,
    })
}

/// `φ' = Ψ(φ)` for the gap set `e`.
pub fn integrate_dubrovin(e: &GapSet, phi0: &AngleVector, times: &[f64], tol: f64) -> Result<DubrovinTrajectory> {
    integrate_field(&DubrovinField::new(e.clone()), phi0, times, tol)
}

/// First time at which the unwrapped angle `φ_j` reaches `target`, by Newton
/// iteration on `t ↦ φ_j(t)` with slope `Ψ_j`.
pub fn time_to_reach<F: AngleField>(field: &F, phi0: &AngleVector, j: usize, target: f64, tol: f64) -> Result<f64> {
    check_start(field.set(), phi0)?;
    if j >= phi0.len() {
        return Err(Error::Dimension {
            expected: phi0.len(),
            got: j + 1,
        });
    }
    let sys = FieldSystem(field);
    let mut integ = Integrator::new(tol);
    let mut t = 0.0_f64;
    let mut y = phi0.0.clone();
    let mut v = vec![0.0; y.len()];
    for _ in 0..100 {
        field.eval(&y, &mut v);
        let dt = (target - y[j]) / v[j];
        if dt.abs() <= 1e-14 * (1.0 + t.abs()) {
            return Ok(t + dt);
        }
        let goal = t + dt;
        integ.advance(&sys, &mut t, &mut y, goal)?;
    }
    Err(Error::RootFinding(format!(
        "angle {j} did not reach {target}; last value {} at t = {t}",
        y[j]
    )))
}
