//! Adaptive Dormand–Prince 5(4) integration for the flows in this crate.
//!
//! The local error estimate is measured in a mixed norm: component `i` is
//! scaled by `tol * (1 + max(|y_i|, |y_i_new|))`, and a step is accepted when
//! the largest scaled component is at most one.

use crate::error::{Error, Result};

/// A first-order system `y' = f(t, y)`.
pub trait OdeSystem {
    fn dim(&self) -> usize;

    fn rhs(&self, t: f64, y: &[f64], dy: &mut [f64]);

    /// States failing this predicate cause the step to be rejected and halved.
    fn admissible(&self, _y: &[f64]) -> bool {
        true
    }
}

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

/// Step counters accumulated over the lifetime of an [`Integrator`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StepStats {
    pub accepted: usize,
    pub rejected: usize,
}

/// Stateful stepper that remembers its last step size between calls, so that
/// sampling a trajectory at many output times does not restart the controller.
#[derive(Debug, Clone)]
pub struct Integrator {
    tol: f64,
    h: Option<f64>,
    stats: StepStats,
    k: [Vec<f64>; 7],
    stage: Vec<f64>,
    y_new: Vec<f64>,
}

impl Integrator {
    /// # Panics
    /// Panics unless `tol` is positive and finite.
    #[must_use]
    pub fn new(tol: f64) -> Self {
        assert!(tol > 0.0 && tol.is_finite(), "tolerance must be positive");
        Self {
            tol,
            h: None,
            stats: StepStats::default(),
            k: Default::default(),
            stage: Vec::new(),
            y_new: Vec::new(),
        }
    }

    #[must_use]
    pub fn stats(&self) -> StepStats {
        self.stats
    }

    /// Advances `(t, y)` to `t_target`.
    pub fn advance<S: OdeSystem>(&mut self, sys: &S, t: &mut f64, y: &mut [f64], t_target: f64) -> Result<()> {
        self.advance_observed(sys, t, y, t_target, |_, _, _| Ok(()))
    }

    /// Advances `(t, y)` to `t_target`, calling `on_step(t_new, y_old, y_new)`
    /// after every accepted step.
    pub fn advance_observed<S, F>(
        &mut self,
        sys: &S,
        t: &mut f64,
        y: &mut [f64],
        t_target: f64,
        mut on_step: F,
    ) -> Result<()>
    where
        S: OdeSystem,
        F: FnMut(f64, &[f64], &[f64]) -> Result<()>,
    {
        let n = sys.dim();
        if y.len() != n {
            return Err(Error::Dimension {
                expected: n,
                got: y.len(),
            });
        }
        if !t_target.is_finite() {
            return Err(Error::Domain(format!("non-finite target time {t_target}")));
        }
        let span = t_target - *t;
        if span == 0.0 {
            return Ok(());
        }
        let dir = span.signum();
        let h_min = 1e-12 * span.abs();
        for k in &mut self.k {
            k.resize(n, 0.0);
        }
        self.stage.resize(n, 0.0);
        self.y_new.resize(n, 0.0);

        let mut h = match self.h {
            Some(h) => h.abs().min(span.abs()),
            None => (1e-2 * span.abs()).min(1e-2),
        };
        sys.rhs(*t, y, &mut self.k[0]);

        while (t_target - *t) * dir > 0.0 {
            let remaining = (t_target - *t).abs();
            let last = h >= remaining;
            let step = if last { remaining } else { h };
            if step < h_min && !last {
                return Err(Error::StepUnderflow { t: *t, h: step });
            }
            let hs = step * dir;
            match self.try_step(sys, *t, y, hs) {
                Some(err) if err <= 1.0 => {
                    let t_new = if last { t_target } else { *t + hs };
                    on_step(t_new, y, &self.y_new)?;
                    y.copy_from_slice(&self.y_new);
                    *t = t_new;
                    self.k.swap(0, 6);
                    self.stats.accepted += 1;
                    let factor = if err == 0.0 {
                        5.0
                    } else {
                        (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
                    };
                    if !last {
                        h = step * factor;
                    } else {
                        h = h.max(step * factor);
                    }
                }
                Some(err) => {
                    self.stats.rejected += 1;
                    h = step * (0.9 * err.powf(-0.25)).clamp(0.1, 0.5);
                    if h < h_min {
                        return Err(Error::StepUnderflow { t: *t, h });
                    }
                }
                None => {
                    self.stats.rejected += 1;
                    h = 0.5 * step;
                    if h < h_min {
                        return Err(Error::StepUnderflow { t: *t, h });
                    }
                }
            }
        }
        self.h = Some(h);
        Ok(())
    }

    /// One Dormand–Prince step; `None` when an intermediate state is inadmissible.
    fn try_step<S: OdeSystem>(&mut self, sys: &S, t: f64, y: &[f64], h: f64) -> Option<f64> {
        let n = y.len();
        let [k1, k2, k3, k4, k5, k6, k7] = &mut self.k;
        let stage = &mut self.stage;

        for i in 0..n {
            stage[i] = y[i] + h * A21 * k1[i];
        }
        if !sys.admissible(stage) {
            return None;
        }
        sys.rhs(t + C2 * h, stage, k2);
        for i in 0..n {
            stage[i] = y[i] + h * (A31 * k1[i] + A32 * k2[i]);
        }
        if !sys.admissible(stage) {
            return None;
        }
        sys.rhs(t + C3 * h, stage, k3);
        for i in 0..n {
            stage[i] = y[i] + h * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i]);
        }
        if !sys.admissible(stage) {
            return None;
        }
        sys.rhs(t + C4 * h, stage, k4);
        for i in 0..n {
            stage[i] = y[i] + h * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]);
        }
        if !sys.admissible(stage) {
            return None;
        }
        sys.rhs(t + C5 * h, stage, k5);
        for i in 0..n {
            stage[i] = y[i] + h * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] + A65 * k5[i]);
        }
        if !sys.admissible(stage) {
            return None;
        }
        sys.rhs(t + h, stage, k6);
        let y_new = &mut self.y_new;
        for i in 0..n {
            y_new[i] = y[i] + h * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] + B6 * k6[i]);
        }
        if !sys.admissible(y_new) {
            return None;
        }
        sys.rhs(t + h, y_new, k7);

        let mut err = 0.0_f64;
        for i in 0..n {
            let e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
            let scale = self.tol * (1.0 + y[i].abs().max(y_new[i].abs()));
            err = err.max((e / scale).abs());
        }
        if err.is_finite() {
            Some(err)
        } else {
            None
        }
    }
}
