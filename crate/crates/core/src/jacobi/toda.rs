use super::operator::{JacobiOperator, Sequence, Topology};
use crate::error::{Error, Result};
use crate::ode::{Integrator, OdeSystem};

/// A Jacobi operator at time `t` along a Toda flow.
#[derive(Debug, Clone, PartialEq)]
pub struct TodaState {
    pub op: JacobiOperator,
    pub t: f64,
}

impl TodaState {
    #[must_use]
    pub fn new(op: JacobiOperator, t: f64) -> Self {
        Self { op, t }
    }
}

/// Velocity field of the Toda lattice:
/// `a_n' = a_n (b_{n+1} - b_n)`, `b_n' = 2 (a_n² - a_{n-1}²)`.
#[must_use]
pub fn toda_rhs(op: &JacobiOperator) -> (Vec<f64>, Vec<f64>) {
    let n0 = op.first_site();
    let len = op.len() as i64;
    let mut da = Vec::with_capacity(op.len());
    let mut db = Vec::with_capacity(op.len());
    for i in 0..len {
        let n = n0 + i;
        da.push(op.a(n) * (op.b(n + 1) - op.b(n)));
        db.push(2.0 * (op.a(n).powi(2) - op.a(n - 1).powi(2)));
    }
    (da, db)
}

/// The Toda field on the stacked vector `(a, b)`.
struct TodaSystem {
    len: usize,
    topology: Topology,
}

impl TodaSystem {
    fn a_at(&self, y: &[f64], i: i64) -> f64 {
        y[self.slot(i)]
    }

    fn b_at(&self, y: &[f64], i: i64) -> f64 {
        y[self.len + self.slot(i)]
    }

    fn slot(&self, i: i64) -> usize {
        let len = self.len as i64;
        match self.topology {
            Topology::Periodic => i.rem_euclid(len) as usize,
            Topology::Window { .. } => i.clamp(0, len - 1) as usize,
        }
    }

    fn lattice_rhs(&self, y: &[f64], dy: &mut [f64]) {
        for i in 0..self.len as i64 {
            let a = self.a_at(y, i);
            dy[i as usize] = a * (self.b_at(y, i + 1) - self.b_at(y, i));
            dy[self.len + i as usize] = 2.0 * (a * a - self.a_at(y, i - 1).powi(2));
        }
    }
}

impl OdeSystem for TodaSystem {
    fn dim(&self) -> usize {
        2 * self.len
    }

    fn rhs(&self, _t: f64, y: &[f64], dy: &mut [f64]) {
        self.lattice_rhs(y, dy);
    }

    fn admissible(&self, y: &[f64]) -> bool {
        y[..self.len].iter().all(|&a| a > 0.0)
    }
}

fn stacked(op: &JacobiOperator) -> Vec<f64> {
    op.a_values().iter().chain(op.b_values()).copied().collect()
}

fn unstack(template: &JacobiOperator, y: &[f64]) -> Result<JacobiOperator> {
    let len = template.len();
    template.with_coefficients(y[..len].to_vec(), y[len..2 * len].to_vec())
}

/// Integrates the Toda lattice from `state` to `t_target` with an adaptive
/// embedded Runge–Kutta 4(5) pair at local tolerance `tol`.
pub fn integrate_toda(state: &TodaState, t_target: f64, tol: f64) -> Result<TodaState> {
    Ok(toda_trajectory(state, &[t_target], tol)?.remove(0))
}

/// Samples the Toda flow from `state` at the given times, in order.
pub fn toda_trajectory(state: &TodaState, times: &[f64], tol: f64) -> Result<Vec<TodaState>> {
    check_tol(tol)?;
    let sys = TodaSystem {
        len: state.op.len(),
        topology: state.op.topology(),
    };
    let mut integ = Integrator::new(tol);
    let mut t = state.t;
    let mut y = stacked(&state.op);
    let mut out = Vec::with_capacity(times.len());
    for &target in times {
        integ.advance(&sys, &mut t, &mut y, target)?;
        out.push(TodaState::new(unstack(&state.op, &y)?, t));
    }
    Ok(out)
}

pub(crate) fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("tolerance must be positive, got {tol}")))
    }
}

/// Toda lattice augmented with solutions of `Ju = zu` evolving by `∂_t u = Pu`.
///
/// On solutions, `(Pu)_n = 2 a_n u_{n+1} - (z - b_n) u_n`; the last stored
/// site uses the mirror form `-2 a_{n-1} u_{n-1} + (z - b_n) u_n`, so the
/// stored piece evolves without reference to values outside it.
struct SolutionSystem {
    lattice: TodaSystem,
    n0: i64,
    z: f64,
    count: usize,
    start: i64,
    len: usize,
}

impl OdeSystem for SolutionSystem {
    fn dim(&self) -> usize {
        self.lattice.dim() + self.count * self.len
    }

    fn rhs(&self, _t: f64, y: &[f64], dy: &mut [f64]) {
        self.lattice.lattice_rhs(y, dy);
        let base = self.lattice.dim();
        let lat = &y[..base];
        for s in 0..self.count {
            let off = base + s * self.len;
            let u = &y[off..off + self.len];
            for i in 0..self.len {
                let site = self.start + i as i64 - self.n0;
                let b = self.lattice.b_at(lat, site);
                dy[off + i] = if i + 1 < self.len {
                    2.0 * self.lattice.a_at(lat, site) * u[i + 1] - (self.z - b) * u[i]
                } else {
                    -2.0 * self.lattice.a_at(lat, site - 1) * u[i - 1] + (self.z - b) * u[i]
                };
            }
        }
    }

    fn admissible(&self, y: &[f64]) -> bool {
        self.lattice.admissible(y)
    }
}

/// Propagates the lattice jointly with real solutions `solutions` of
/// `J u = z u` (all stored on the same sites, at least two of them), sampling
/// at `times`.
pub fn integrate_with_solutions(
    state: &TodaState,
    solutions: &[Sequence<f64>],
    z: f64,
    times: &[f64],
    tol: f64,
) -> Result<Vec<(TodaState, Vec<Sequence<f64>>)>> {
    check_tol(tol)?;
    let first = solutions
        .first()
        .ok_or_else(|| Error::Domain("no solutions to propagate".into()))?;
    let (start, len) = (first.start, first.values.len());
    if len < 2 {
        return Err(Error::Dimension { expected: 2, got: len });
    }
    if let Some(bad) = solutions.iter().find(|s| s.start != start || s.values.len() != len) {
        return Err(Error::Dimension {
            expected: len,
            got: bad.values.len(),
        });
    }
    let sys = SolutionSystem {
        lattice: TodaSystem {
            len: state.op.len(),
            topology: state.op.topology(),
        },
        n0: state.op.first_site(),
        z,
        count: solutions.len(),
        start,
        len,
    };
    let mut y = stacked(&state.op);
    for s in solutions {
        y.extend_from_slice(&s.values);
    }
    let mut integ = Integrator::new(tol);
    let mut t = state.t;
    let base = 2 * state.op.len();
    let mut out = Vec::with_capacity(times.len());
    for &target in times {
        integ.advance(&sys, &mut t, &mut y, target)?;
        let op = unstack(&state.op, &y)?;
        let sols = (0..solutions.len())
            .map(|s| Sequence::new(start, y[base + s * len..base + (s + 1) * len].to_vec()))
            .collect();
        out.push((TodaState::new(op, t), sols));
    }
    Ok(out)
}
