//! Dirichlet data `(μ_j, σ_j)` and the angular coordinates `φ_j`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::gapset::GapSet;
use super::weyl::{weyl_vectors, Side};
use crate::error::{Error, Result};
use crate::jacobi::JacobiOperator;

/// Which sheet a Dirichlet point sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sheet {
    /// `m₊` has the pole, `σ = +1`, `φ ∈ (0, π)`.
    Upper,
    /// `m₋` has the pole, `σ = −1`, `φ ∈ (−π, 0)`.
    Lower,
    /// `μ` is a gap edge and `σ = 0`; `φ ≡ 0` at `E⁺` and `φ ≡ π` at `E⁻`.
    Edge,
}

impl Sheet {
    #[must_use]
    pub fn sigma(self) -> i8 {
        match self {
            Sheet::Upper => 1,
            Sheet::Lower => -1,
            Sheet::Edge => 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirichletPoint {
    pub mu: f64,
    pub sheet: Sheet,
}

impl DirichletPoint {
    #[must_use]
    pub fn sigma(&self) -> i8 {
        self.sheet.sigma()
    }
}

/// One Dirichlet point per gap.
#[derive(Debug, Clone, PartialEq)]
pub struct DirichletDivisor(pub Vec<DirichletPoint>);

impl DirichletDivisor {
    #[must_use]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[must_use]
    pub fn mu(&self) -> Vec<f64> {
        self.0.iter().map(|p| p.mu).collect()
    }

    #[must_use]
    pub fn sigma(&self) -> Vec<i8> {
        self.0.iter().map(DirichletPoint::sigma).collect()
    }
}

/// Torus coordinates `φ_j ∈ ℝ/2πℤ`, one per gap.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleVector(pub Vec<f64>);

impl AngleVector {
    #[must_use]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[must_use]
    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

/// `φ` reduced to `(−π, π]`.
#[must_use]
pub fn reduce_angle(phi: f64) -> f64 {
    let r = phi.rem_euclid(2.0 * PI);
    if r > PI {
        r - 2.0 * PI
    } else {
        r
    }
}

fn check_len(e: &GapSet, n: usize) -> Result<()> {
    if e.len() == n {
        Ok(())
    } else {
        Err(Error::Dimension {
            expected: e.len(),
            got: n,
        })
    }
}

/// `μ_j = E_j⁻ + γ_j cos²(φ_j/2)`, with the sheet given by the sign of the
/// reduced angle; `φ ∈ {0, π}` are edges.
pub fn divisor_from_angles(e: &GapSet, phi: &AngleVector) -> Result<DirichletDivisor> {
    check_len(e, phi.len())?;
    let mut out = Vec::with_capacity(phi.len());
    for (g, &p) in e.gaps().iter().zip(&phi.0) {
        if !p.is_finite() {
            return Err(Error::Domain(format!("non-finite angle {p}")));
        }
        let r = reduce_angle(p);
        let c = (0.5 * r).cos();
        let mu = g.lower + g.width() * c * c;
        let (mu, sheet) = if r == 0.0 {
            (g.upper, Sheet::Edge)
        } else if r == PI {
            (g.lower, Sheet::Edge)
        } else if r > 0.0 {
            (mu, Sheet::Upper)
        } else {
            (mu, Sheet::Lower)
        };
        out.push(DirichletPoint { mu, sheet });
    }
    Ok(DirichletDivisor(out))
}

/// Inverse of [`divisor_from_angles`]; angles are returned in `(−π, π]`.
pub fn angles_from_divisor(e: &GapSet, d: &DirichletDivisor) -> Result<AngleVector> {
    check_len(e, d.len())?;
    let mut out = Vec::with_capacity(d.len());
    for (j, (g, p)) in e.gaps().iter().zip(&d.0).enumerate() {
        if !(p.mu >= g.lower && p.mu <= g.upper) {
            return Err(Error::Domain(format!(
                "μ_{j} = {} lies outside gap [{}, {}]",
                p.mu, g.lower, g.upper
            )));
        }
        let phi0 = 2.0 * ((p.mu - g.lower) / g.width()).sqrt().clamp(0.0, 1.0).acos();
        out.push(match p.sheet {
            Sheet::Upper => phi0,
            Sheet::Lower => -phi0,
            Sheet::Edge if p.mu == g.upper => 0.0,
            Sheet::Edge if p.mu == g.lower => PI,
            Sheet::Edge => {
                return Err(Error::Domain(format!(
                    "μ_{j} = {} is marked as an edge but is interior",
                    p.mu
                )))
            }
        });
    }
    Ok(AngleVector(out))
}

/// Dirichlet data of `op` at `site`, relative to the gaps of `e`.
///
/// In each gap, `x ↦ r(site, site; x)` is bracketed on
/// `(E⁻ + η, E⁺ − η)` and its root found by bisection to `1e−12 γ`. Constant
/// sign puts `μ` on an edge. The sheet of an interior root is the side whose
/// `m`-function is larger at `μ ± δ`.
pub fn dirichlet_data(op: &JacobiOperator, e: &GapSet, site: i64) -> Result<DirichletDivisor> {
    let r = |x: f64| -> Result<f64> { Ok(weyl_vectors(op, x.into(), site)?.green_diag().re) };
    let mut out = Vec::with_capacity(e.len());
    for (j, g) in e.gaps().iter().enumerate() {
        let gamma = g.width();
        let eta = 1e-9 * gamma;
        let (mut lo, mut hi) = (g.lower + eta, g.upper - eta);
        let (r_lo, r_hi) = (r(lo)?, r(hi)?);
        if r_lo >= 0.0 {
            if r_hi < 0.0 {
                return Err(Error::DataExtraction {
                    gap: j,
                    reason: format!("r decreases across the gap ({r_lo} to {r_hi})"),
                });
            }
            out.push(DirichletPoint {
                mu: g.lower,
                sheet: Sheet::Edge,
            });
            continue;
        }
        if r_hi <= 0.0 {
            out.push(DirichletPoint {
                mu: g.upper,
                sheet: Sheet::Edge,
            });
            continue;
        }
        while hi - lo > 1e-12 * gamma {
            let mid = 0.5 * (lo + hi);
            let v = r(mid)?;
            if !v.is_finite() {
                return Err(Error::DataExtraction {
                    gap: j,
                    reason: format!("r is not finite at {mid}"),
                });
            }
            if v < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mu = 0.5 * (lo + hi);
        let delta = (1e-6 * gamma).min(0.5 * (mu - g.lower)).min(0.5 * (g.upper - mu));
        let (mut plus, mut minus) = (0.0, 0.0);
        for x in [mu - delta, mu + delta] {
            let v = weyl_vectors(op, Complex64::new(x, 0.0), site)?;
            plus += v.m(Side::Plus).norm();
            minus += v.m(Side::Minus).norm();
        }
        let sheet = if plus > minus { Sheet::Upper } else { Sheet::Lower };
        out.push(DirichletPoint { mu, sheet });
    }
    Ok(DirichletDivisor(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::gapset::Gap;

    fn one_gap() -> GapSet {
        GapSet::new(-1.0, 1.0, vec![Gap::new(-0.2, 0.2)]).unwrap()
    }

    #[test]
    fn special_angles() {
        let e = one_gap();
        let d = divisor_from_angles(&e, &AngleVector(vec![0.0])).unwrap();
        assert_eq!(
            d.0[0],
            DirichletPoint {
                mu: 0.2,
                sheet: Sheet::Edge
            }
        );
        let d = divisor_from_angles(&e, &AngleVector(vec![PI])).unwrap();
        assert_eq!(
            d.0[0],
            DirichletPoint {
                mu: -0.2,
                sheet: Sheet::Edge
            }
        );
        let d = divisor_from_angles(&e, &AngleVector(vec![PI / 2.0])).unwrap();
        assert!(d.0[0].mu.abs() < 1e-15);
        assert_eq!(d.0[0].sigma(), 1);
        let d = divisor_from_angles(&e, &AngleVector(vec![-PI / 2.0 + 4.0 * PI])).unwrap();
        assert_eq!(d.0[0].sigma(), -1);
    }

    #[test]
    fn out_of_gap_mu_is_rejected() {
        let e = one_gap();
        let d = DirichletDivisor(vec![DirichletPoint {
            mu: 0.5,
            sheet: Sheet::Upper,
        }]);
        assert!(angles_from_divisor(&e, &d).is_err());
    }

    #[test]
    fn period_two_divisor() {
        let op = JacobiOperator::periodic(vec![0.6, 0.4], vec![0.0; 2]).unwrap();
        let d = dirichlet_data(&op, &one_gap(), 0).unwrap();
        assert!(d.0[0].mu.abs() < 1e-10);
        assert_eq!(d.0[0].sheet, Sheet::Upper);
        let d1 = dirichlet_data(&op, &one_gap(), 1).unwrap();
        assert_eq!(d1.0[0].sheet, Sheet::Lower);
    }

    #[test]
    fn free_operator_has_empty_divisor() {
        let e = GapSet::interval(-1.0, 1.0).unwrap();
        assert!(dirichlet_data(&JacobiOperator::free(), &e, 0).unwrap().is_empty());
    }
}
