use crate::error::{Error, Result};

/// How the stored coefficients extend to all of ℤ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Topology {
    /// `a_{n+p} = a_n`, `b_{n+p} = b_n`, with `p` the stored length.
    Periodic,
    /// Coefficients stored on `n_min..=n_min+len-1` and extended by their
    /// boundary values outside.
    Window { n_min: i64 },
}

/// A two-sided Jacobi matrix `(Ju)_n = a_n u_{n+1} + b_n u_n + a_{n-1} u_{n-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiOperator {
    a: Vec<f64>,
    b: Vec<f64>,
    topology: Topology,
}

impl JacobiOperator {
    /// Periodic operator with period `a.len()`.
    pub fn periodic(a: Vec<f64>, b: Vec<f64>) -> Result<Self> {
        Self::new(a, b, Topology::Periodic)
    }

    /// Windowed operator whose first stored site is `n_min`.
    pub fn window(n_min: i64, a: Vec<f64>, b: Vec<f64>) -> Result<Self> {
        Self::new(a, b, Topology::Window { n_min })
    }

    pub fn new(a: Vec<f64>, b: Vec<f64>, topology: Topology) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::InvalidOperator("empty coefficient sequence".into()));
        }
        if a.len() != b.len() {
            return Err(Error::Dimension {
                expected: a.len(),
                got: b.len(),
            });
        }
        if let Some((n, x)) = a.iter().enumerate().find(|(_, x)| !(x.is_finite() && **x > 0.0)) {
            return Err(Error::InvalidOperator(format!(
                "a[{n}] = {x} is not a positive finite number"
            )));
        }
        if let Some((n, x)) = b.iter().enumerate().find(|(_, x)| !x.is_finite()) {
            return Err(Error::InvalidOperator(format!("b[{n}] = {x} is not finite")));
        }
        Ok(Self { a, b, topology })
    }

    /// The free operator: period one, `a = ½`, `b = 0`, spectrum `[-1, 1]`.
    #[must_use]
    pub fn free() -> Self {
        Self {
            a: vec![0.5],
            b: vec![0.0],
            topology: Topology::Periodic,
        }
    }

    #[must_use]
    pub fn topology(&self) -> Topology {
        self.topology
    }

    /// Number of stored sites.
    #[must_use]
    pub fn len(&self) -> usize {
        self.a.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    #[must_use]
    pub fn period(&self) -> Option<usize> {
        match self.topology {
            Topology::Periodic => Some(self.a.len()),
            Topology::Window { .. } => None,
        }
    }

    /// First stored site.
    #[must_use]
    pub fn first_site(&self) -> i64 {
        match self.topology {
            Topology::Periodic => 0,
            Topology::Window { n_min } => n_min,
        }
    }

    /// Last stored site.
    #[must_use]
    pub fn last_site(&self) -> i64 {
        self.first_site() + self.a.len() as i64 - 1
    }

    #[must_use]
    pub fn a_values(&self) -> &[f64] {
        &self.a
    }

    #[must_use]
    pub fn b_values(&self) -> &[f64] {
        &self.b
    }

    #[must_use]
    pub fn sup_norm(&self) -> f64 {
        self.a.iter().chain(&self.b).fold(0.0_f64, |m, x| m.max(x.abs()))
    }

    fn slot(&self, n: i64) -> usize {
        match self.topology {
            Topology::Periodic => n.rem_euclid(self.a.len() as i64) as usize,
            Topology::Window { n_min } => (n - n_min).clamp(0, self.a.len() as i64 - 1) as usize,
        }
    }

    /// `a_n` for any site `n ∈ ℤ`.
    #[must_use]
    pub fn a(&self, n: i64) -> f64 {
        self.a[self.slot(n)]
    }

    /// `b_n` for any site `n ∈ ℤ`.
    #[must_use]
    pub fn b(&self, n: i64) -> f64 {
        self.b[self.slot(n)]
    }

    /// The shifted operator `(S^k J)`, whose coefficients at `n` are those of
    /// `J` at `n + k`.
    #[must_use]
    pub fn shifted(&self, k: i64) -> Self {
        match self.topology {
            Topology::Periodic => {
                let p = self.a.len();
                let s = k.rem_euclid(p as i64) as usize;
                let rot = |v: &[f64]| -> Vec<f64> { (0..p).map(|i| v[(i + s) % p]).collect() };
                Self {
                    a: rot(&self.a),
                    b: rot(&self.b),
                    topology: Topology::Periodic,
                }
            }
            Topology::Window { n_min } => Self {
                a: self.a.clone(),
                b: self.b.clone(),
                topology: Topology::Window { n_min: n_min - k },
            },
        }
    }

    /// Replaces the stored coefficients, keeping the topology.
    pub fn with_coefficients(&self, a: Vec<f64>, b: Vec<f64>) -> Result<Self> {
        if a.len() != self.a.len() {
            return Err(Error::Dimension {
                expected: self.a.len(),
                got: a.len(),
            });
        }
        Self::new(a, b, self.topology)
    }

    pub(crate) fn check_sequence(&self, len: usize) -> Result<()> {
        if len == self.a.len() {
            Ok(())
        } else {
            Err(Error::Dimension {
                expected: self.a.len(),
                got: len,
            })
        }
    }
}

/// A finite piece of a sequence on ℤ, stored from site `start` onward.
#[derive(Debug, Clone, PartialEq)]
pub struct Sequence<T> {
    pub start: i64,
    pub values: Vec<T>,
}

impl<T: Copy> Sequence<T> {
    #[must_use]
    pub fn new(start: i64, values: Vec<T>) -> Self {
        Self { start, values }
    }

    #[must_use]
    pub fn end(&self) -> i64 {
        self.start + self.values.len() as i64
    }

    #[must_use]
    pub fn contains(&self, n: i64) -> bool {
        n >= self.start && n < self.end()
    }

    #[must_use]
    pub fn get(&self, n: i64) -> Option<T> {
        if self.contains(n) {
            Some(self.values[(n - self.start) as usize])
        } else {
            None
        }
    }
}

/// `(Ju)_n`; `u` is indexed like the operator's stored sites. Periodic
/// operators wrap indices; windows use zero extension of `u`.
pub fn apply_jacobi(op: &JacobiOperator, u: &[f64]) -> Result<Vec<f64>> {
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
            op.a(n) * get(n + 1) + op.b(n) * get(n) + op.a(n - 1) * get(n - 1)
        })
        .collect())
}
