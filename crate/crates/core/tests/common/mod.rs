#![allow(dead_code)]

use nalgebra::DMatrix;
use rand::{RngExt, SeedableRng};
use rand_pcg::Pcg64;
use toda_core::spectral::{Gap, GapSet};
use toda_core::JacobiOperator;

pub fn one_gap() -> GapSet {
    GapSet::new(-1.0, 1.0, vec![Gap::new(-0.2, 0.2)]).unwrap()
}

pub fn two_gap() -> GapSet {
    GapSet::new(-1.0, 1.0, vec![Gap::new(-0.5, -0.3), Gap::new(0.2, 0.35)]).unwrap()
}

pub fn six_gap() -> GapSet {
    let gaps = [
        (-0.7, 0.2),
        (-0.35, 0.1),
        (0.0, 0.05),
        (0.3, 0.025),
        (0.55, 0.0125),
        (0.8, 0.00625),
    ]
    .iter()
    .map(|&(c, w)| Gap::new(c - w / 2.0, c + w / 2.0))
    .collect();
    GapSet::new(-1.0, 1.0, gaps).unwrap()
}

/// Gaps centred at `1 − 2^{−j}` of width `4^{−j−2}`, `j = 1..=n`.
pub fn dyadic(n: usize) -> GapSet {
    let gaps = (1..=n as i32)
        .map(|j| {
            let c = 1.0 - 2f64.powi(-j);
            let w = 4f64.powi(-j - 2);
            Gap::new(c - w / 2.0, c + w / 2.0)
        })
        .collect();
    GapSet::new(-1.0, 1.0, gaps).unwrap()
}

pub fn p2() -> JacobiOperator {
    JacobiOperator::periodic(vec![0.6, 0.4], vec![0.0, 0.0]).unwrap()
}

/// Period 4, `a ~ U[0.5, 1.5)` then `b ~ U[−0.5, 0.5)` from `Pcg64` seed 0.
pub fn p4() -> JacobiOperator {
    let mut rng = Pcg64::seed_from_u64(0);
    let a: Vec<f64> = (0..4).map(|_| rng.random_range(0.5..1.5)).collect();
    let b: Vec<f64> = (0..4).map(|_| rng.random_range(-0.5..0.5)).collect();
    JacobiOperator::periodic(a, b).unwrap()
}

/// Dense `n × n` truncation on sites `first..first + n`.
pub fn dense_truncation(op: &JacobiOperator, first: i64, n: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        let s = first + i as i64;
        m[(i, i)] = op.b(s);
        if i + 1 < n {
            m[(i, i + 1)] = op.a(s);
            m[(i + 1, i)] = op.a(s);
        }
    }
    m
}

pub fn sorted_eigenvalues(m: DMatrix<f64>) -> Vec<f64> {
    let mut v: Vec<f64> = m.symmetric_eigen().eigenvalues.iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}
