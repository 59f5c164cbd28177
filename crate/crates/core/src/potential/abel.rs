//! The Abel map `𝒜_j(φ) = π Σ_k σ_k (ξ_j(μ_k) − ξ_j(E_k⁻))` on the torus,
//! its inverse, the shift character `α` and the Toda frequencies.
//!
//! With `θ_k = π − |φ_k|` the summand is `σ_k F_{jk}(θ_k)`, where `F_{jk}` is
//! the gap increment of `ξ_j` on gap `k`. Hence
//! `∂𝒜_j/∂φ_k = −π F′_{jk}(θ_k)`, which is smooth across `φ_k ∈ πℤ`.
//!
//! At the edges `σ_k = 0`, but the summand is taken as a one-sided limit:
//! at `E_k⁻` it vanishes, and at `E_k⁺` the two limits `±π F_{jk}(π)` are
//! `±π δ_{jk}` and coincide mod 2π. This keeps `𝒜` continuous on the torus.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};

use super::equilibrium::{equilibrium_measure, EquilibriumData};
use super::harmonic::HarmonicMeasures;
use crate::error::{Error, Result};
use crate::flow::{sigma_of_angle, DubrovinTrajectory};
use crate::jacobi::JacobiOperator;
use crate::spectral::{angles_from_divisor, dirichlet_data, reduce_angle, AngleVector, GapSet};

/// A point of `ℝᵍ/2πℤᵍ`, components in `[0, 2π)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AbelImage(pub Vec<f64>);

impl AbelImage {
    #[must_use]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn reduced(v: Vec<f64>) -> Self {
        Self(v.into_iter().map(|x| x.rem_euclid(2.0 * PI)).collect())
    }
}

/// Equilibrium measure and harmonic measures of one finite-gap set.
#[derive(Debug, Clone, PartialEq)]
pub struct AbelGeometry {
    set: GapSet,
    equilibrium: EquilibriumData,
    harmonic: HarmonicMeasures,
}

impl AbelGeometry {
    pub fn new(e: &GapSet) -> Result<Self> {
        let equilibrium = equilibrium_measure(e, 32)?;
        let harmonic = HarmonicMeasures::new(&equilibrium)?;
        Ok(Self {
            set: e.clone(),
            equilibrium,
            harmonic,
        })
    }

    #[must_use]
    pub fn set(&self) -> &GapSet {
        &self.set
    }

    #[must_use]
    pub fn equilibrium(&self) -> &EquilibriumData {
        &self.equilibrium
    }

    #[must_use]
    pub fn harmonic(&self) -> &HarmonicMeasures {
        &self.harmonic
    }

    fn check(&self, n: usize) -> Result<()> {
        if n == self.set.len() {
            Ok(())
        } else {
            Err(Error::Dimension {
                expected: self.set.len(),
                got: n,
            })
        }
    }
}

fn wrap(x: f64) -> f64 {
    reduce_angle(x)
}

fn raw_image(geo: &AbelGeometry, phi: &[f64]) -> Vec<f64> {
    let g = phi.len();
    (0..g)
        .map(|j| {
            PI * phi
                .iter()
                .enumerate()
                .map(|(k, &p)| {
                    let th = PI - reduce_angle(p).abs();
                    let side = if sigma_of_angle(p) < 0 { -1.0 } else { 1.0 };
                    side * geo.harmonic.gap_increment(j, k, th)
                })
                .sum::<f64>()
        })
        .collect()
}

/// `𝒜(φ)`.
pub fn abel_map(geo: &AbelGeometry, phi: &AngleVector) -> Result<AbelImage> {
    geo.check(phi.len())?;
    if let Some(p) = phi.0.iter().find(|p| !p.is_finite()) {
        return Err(Error::Domain(format!("non-finite angle {p}")));
    }
    Ok(AbelImage::reduced(raw_image(geo, &phi.0)))
}

/// `∂𝒜_j/∂φ_k`.
pub fn abel_jacobian(geo: &AbelGeometry, phi: &AngleVector) -> Result<DMatrix<f64>> {
    geo.check(phi.len())?;
    let g = phi.len();
    Ok(DMatrix::from_fn(g, g, |j, k| {
        let th = PI - reduce_angle(phi.0[k]).abs();
        -PI * geo.harmonic.gap_increment_derivative(j, k, th)
    }))
}

/// Solves `𝒜(φ) = target` by Newton's method, continued from `start` along
/// the straight path to `target` in `substeps` stages (doubled on failure).
pub fn abel_inverse(geo: &AbelGeometry, target: &AbelImage, start: &AngleVector) -> Result<AngleVector> {
    geo.check(target.len())?;
    geo.check(start.len())?;
    let g = start.len();
    if g == 0 {
        return Ok(AngleVector(Vec::new()));
    }
    let a0 = raw_image(geo, &start.0);
    let delta: Vec<f64> = (0..g).map(|j| wrap(target.0[j] - a0[j])).collect();
    let mut substeps = 4_usize;
    'outer: while substeps <= 1024 {
        let mut phi = start.0.clone();
        let stages = substeps;
        for s in 1..=stages {
            let lambda = s as f64 / stages as f64;
            let goal: Vec<f64> = (0..g).map(|j| a0[j] + lambda * delta[j]).collect();
            let mut converged = false;
            for _ in 0..50 {
                let img = raw_image(geo, &phi);
                let r = DVector::from_fn(g, |j, _| wrap(goal[j] - img[j]));
                if r.amax() <= 1e-13 {
                    converged = true;
                    break;
                }
                let jac = abel_jacobian(geo, &AngleVector(phi.clone()))?;
                let Some(step) = jac.lu().solve(&r) else {
                    substeps *= 2;
                    continue 'outer;
                };
                let scale = (0.5 / step.amax()).min(1.0);
                for (p, d) in phi.iter_mut().zip(step.iter()) {
                    *p += scale * d;
                }
            }
            if !converged {
                substeps *= 2;
                continue 'outer;
            }
        }
        return Ok(AngleVector(phi.into_iter().map(reduce_angle).collect()));
    }
    Err(Error::RootFinding(format!(
        "Abel inversion did not converge for target {:?}",
        target.0
    )))
}

/// `𝒜⁻¹(𝒜(φ) + v)`.
pub fn translate(geo: &AbelGeometry, phi: &AngleVector, v: &AbelImage) -> Result<AngleVector> {
    let a = abel_map(geo, phi)?;
    geo.check(v.len())?;
    let target = AbelImage::reduced(a.0.iter().zip(&v.0).map(|(x, y)| x + y).collect());
    abel_inverse(geo, &target, phi)
}

/// The character `α` with `𝒜(φ(n+1)) = 𝒜(φ(n)) + α`:
/// `α_j = 2π ρ_E(E ∩ [E̲, E_j⁻]) ≡ −2π ρ_E(E ∩ [E_j⁺, Ē]) mod 2π`.
#[must_use]
pub fn shift_character(geo: &AbelGeometry) -> AbelImage {
    let masses = geo.equilibrium.band_masses();
    AbelImage::reduced(
        (0..geo.set.len())
            .map(|j| 2.0 * PI * masses[..=j].iter().sum::<f64>())
            .collect(),
    )
}

/// `max_{n ≤ 2p} |𝒜(φ(n+1)) − 𝒜(φ(n)) − α|` (mod 2π) for a periodic
/// operator with spectrum `geo.set()`, where `φ(n)` is the Dirichlet data at
/// site `n`.
pub fn shift_residual(geo: &AbelGeometry, op: &JacobiOperator) -> Result<f64> {
    let p = op.period().ok_or(Error::UnsupportedTopology(
        "the shift residual needs a periodic operator",
    ))?;
    let alpha = shift_character(geo);
    let image = |n: i64| -> Result<AbelImage> {
        let d = dirichlet_data(op, &geo.set, n)?;
        abel_map(geo, &angles_from_divisor(&geo.set, &d)?)
    };
    let mut worst = 0.0_f64;
    let mut prev = image(0)?;
    for n in 1..=(2 * p as i64 + 1) {
        let next = image(n)?;
        for j in 0..alpha.len() {
            worst = worst.max(wrap(next.0[j] - prev.0[j] - alpha.0[j]).abs());
        }
        prev = next;
    }
    Ok(worst)
}

/// Slopes of the unwrapped Abel image along a trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct Frequencies {
    pub zeta: Vec<f64>,
    /// Largest absolute deviation of the unwrapped image from its fit.
    pub residual: f64,
}

/// Least-squares fit of `t ↦ 𝒜_j(φ(t))`, unwrapped by nearest-branch
/// continuation. Successive raw samples must differ by less than `π/2`.
pub fn toda_frequencies(geo: &AbelGeometry, traj: &DubrovinTrajectory) -> Result<Frequencies> {
    if traj.len() < 10 {
        return Err(Error::TooFewSamples {
            needed: 10,
            got: traj.len(),
        });
    }
    let g = geo.set.len();
    let images = (0..traj.len())
        .map(|i| abel_map(geo, &traj.angles[i]))
        .collect::<Result<Vec<_>>>()?;
    let t = &traj.times;
    let mut zeta = Vec::with_capacity(g);
    let mut residual = 0.0_f64;
    for j in 0..g {
        let mut y = vec![images[0].0[j]];
        for i in 1..images.len() {
            let d = wrap(images[i].0[j] - images[i - 1].0[j]);
            if d.abs() >= 0.5 * PI {
                return Err(Error::Domain(format!(
                    "sampling too coarse to unwrap coordinate {j}: jump {d} at t = {}",
                    t[i]
                )));
            }
            y.push(y[i - 1] + d);
        }
        let (intercept, slope) = crate::fit::linear_fit(t, &y);
        for (ti, yi) in t.iter().zip(&y) {
            residual = residual.max((yi - intercept - slope * ti).abs());
        }
        zeta.push(slope);
    }
    Ok(Frequencies { zeta, residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::Gap;

    fn two_band() -> AbelGeometry {
        AbelGeometry::new(&GapSet::new(-1.0, 1.0, vec![Gap::new(-0.2, 0.2)]).unwrap()).unwrap()
    }

    #[test]
    fn edges_are_continuous_limits() {
        let geo = two_band();
        assert_eq!(abel_map(&geo, &AngleVector(vec![PI])).unwrap().0, vec![0.0]);
        let top = abel_map(&geo, &AngleVector(vec![0.0])).unwrap().0[0];
        assert!((top - PI).abs() < 1e-12);
        for eps in [1e-9, -1e-9] {
            let near = abel_map(&geo, &AngleVector(vec![eps])).unwrap().0[0];
            assert!((near - top).abs() < 1e-8, "{eps}: {near}");
        }
    }

    #[test]
    fn symmetric_midpoint() {
        let geo = two_band();
        let a = abel_map(&geo, &AngleVector(vec![PI / 2.0])).unwrap();
        assert!((a.0[0] - PI / 2.0).abs() < 1e-12);
        assert!((shift_character(&geo).0[0] - PI).abs() < 1e-12);
    }

    #[test]
    fn inverse_roundtrip() {
        let geo = two_band();
        for phi in [0.3, 1.2, -2.9, 3.1] {
            let a = abel_map(&geo, &AngleVector(vec![phi])).unwrap();
            let back = abel_inverse(&geo, &a, &AngleVector(vec![0.0])).unwrap();
            assert!((reduce_angle(back.0[0] - phi)).abs() < 1e-12, "{phi}: {:?}", back.0);
        }
    }
}
