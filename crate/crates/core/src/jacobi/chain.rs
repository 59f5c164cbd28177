use super::operator::JacobiOperator;
use crate::error::{Error, Result};

/// How the bond after the last particle is closed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Closure {
    /// No bond after the last particle.
    Open,
    /// The last particle is bonded to the first one displaced by
    /// `period_shift`, i.e. `q_k = q_0 + period_shift`.
    Periodic { period_shift: f64 },
}

/// Positions and momenta of a chain of particles with exponential
/// nearest-neighbour interaction.
#[derive(Debug, Clone, PartialEq)]
pub struct ParticleChain {
    pub p: Vec<f64>,
    pub q: Vec<f64>,
    pub closure: Closure,
}

impl ParticleChain {
    pub fn open(p: Vec<f64>, q: Vec<f64>) -> Result<Self> {
        Self::new(p, q, Closure::Open)
    }

    pub fn periodic(p: Vec<f64>, q: Vec<f64>, period_shift: f64) -> Result<Self> {
        Self::new(p, q, Closure::Periodic { period_shift })
    }

    fn new(p: Vec<f64>, q: Vec<f64>, closure: Closure) -> Result<Self> {
        if p.len() != q.len() {
            return Err(Error::Dimension {
                expected: q.len(),
                got: p.len(),
            });
        }
        if q.is_empty() {
            return Err(Error::Domain("empty particle chain".into()));
        }
        Ok(Self { p, q, closure })
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.q.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.q.is_empty()
    }

    /// Bond lengths `q_{n+1} − q_n`, including the closing bond if any.
    fn bonds(&self) -> Vec<f64> {
        let mut d: Vec<f64> = self.q.windows(2).map(|w| w[1] - w[0]).collect();
        if let Closure::Periodic { period_shift } = self.closure {
            d.push(self.q[0] + period_shift - self.q[self.q.len() - 1]);
        }
        d
    }

    /// `H = ½Σ p_n² + Σ_bonds exp(−(q_{n+1} − q_n))`.
    #[must_use]
    pub fn hamiltonian(&self) -> f64 {
        0.5 * self.p.iter().map(|p| p * p).sum::<f64>() + self.bonds().iter().map(|d| (-d).exp()).sum::<f64>()
    }

    /// Flaschka variables `a_n = ½ exp(−½(q_{n+1} − q_n))`, `b_n = −½ p_n`.
    /// An open chain of `k` particles gives `k − 1` values of `a`.
    #[must_use]
    pub fn flaschka(&self) -> (Vec<f64>, Vec<f64>) {
        let a = self.bonds().iter().map(|d| 0.5 * (-0.5 * d).exp()).collect();
        let b = self.p.iter().map(|p| -0.5 * p).collect();
        (a, b)
    }

    /// The periodic Jacobi operator of a periodic chain.
    pub fn to_operator(&self) -> Result<JacobiOperator> {
        match self.closure {
            Closure::Periodic { .. } => {
                let (a, b) = self.flaschka();
                JacobiOperator::periodic(a, b)
            }
            Closure::Open => Err(Error::UnsupportedTopology(
                "an open chain has no periodic Jacobi operator",
            )),
        }
    }

    /// The periodic chain of a periodic operator, with first position `q0`.
    pub fn from_operator(op: &JacobiOperator, q0: f64) -> Result<Self> {
        if op.period().is_none() {
            return Err(Error::UnsupportedTopology(
                "chain reconstruction needs a periodic operator",
            ));
        }
        inverse_flaschka(op.a_values(), op.b_values(), q0)
    }
}

/// Flaschka map for an open chain.
pub fn flaschka(p: &[f64], q: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    Ok(ParticleChain::open(p.to_vec(), q.to_vec())?.flaschka())
}

/// Inverts the Flaschka map: `q_{n+1} = q_n − 2 log(2 a_n)`, `p_n = −2 b_n`.
///
/// With `a.len() == b.len() − 1` the chain is open; with `a.len() == b.len()`
/// the last `a` closes it periodically.
pub fn inverse_flaschka(a: &[f64], b: &[f64], q0: f64) -> Result<ParticleChain> {
    let k = b.len();
    if k == 0 || !(a.len() + 1 == k || a.len() == k) {
        return Err(Error::Dimension {
            expected: k.saturating_sub(1),
            got: a.len(),
        });
    }
    if let Some((n, x)) = a.iter().enumerate().find(|(_, x)| !(**x > 0.0)) {
        return Err(Error::Domain(format!("a[{n}] = {x} must be positive")));
    }
    let mut q = Vec::with_capacity(k);
    q.push(q0);
    for n in 0..k - 1 {
        q.push(q[n] - 2.0 * (2.0 * a[n]).ln());
    }
    let p = b.iter().map(|b| -2.0 * b).collect();
    if a.len() == k {
        let period_shift = q[k - 1] - 2.0 * (2.0 * a[k - 1]).ln() - q0;
        ParticleChain::periodic(p, q, period_shift)
    } else {
        ParticleChain::open(p, q)
    }
}

/// Hamiltonian of an open chain.
pub fn hamiltonian(p: &[f64], q: &[f64]) -> Result<f64> {
    Ok(ParticleChain::open(p.to_vec(), q.to_vec())?.hamiltonian())
}
