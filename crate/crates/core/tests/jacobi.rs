mod common;

use common::{p2, p4, sorted_eigenvalues};
use num_complex::Complex64;
use proptest::prelude::*;
use toda_core::jacobi::{
    apply_jacobi, conserved_traces, flaschka, integrate_toda, integrate_with_solutions, inverse_flaschka, lax_p_apply,
    lax_residual, periodic_matrix, periodic_p_matrix, solve_recurrence, toda_trajectory, transfer_matrix, wronskian,
    ParticleChain,
};
use toda_core::{JacobiOperator, TodaState};

#[test]
fn isospectral_over_unit_time() {
    let op = p4();
    let before = sorted_eigenvalues(periodic_matrix(&op).unwrap());
    let times: Vec<f64> = (1..=10).map(|k| 0.1 * k as f64).collect();
    for s in toda_trajectory(&TodaState::new(op, 0.0), &times, 1e-10).unwrap() {
        let after = sorted_eigenvalues(periodic_matrix(&s.op).unwrap());
        for (x, y) in before.iter().zip(&after) {
            assert!((x - y).abs() <= 1e-8, "t = {}: {x} vs {y}", s.t);
        }
    }
}

#[test]
fn traces_are_conserved() {
    let op = p4();
    let t0 = conserved_traces(&op, 4).unwrap();
    let later = integrate_toda(&TodaState::new(op.clone(), 0.0), 1.0, 1e-10).unwrap();
    let t1 = conserved_traces(&later.op, 4).unwrap();
    for (x, y) in t0.iter().zip(&t1) {
        assert!((x - y).abs() <= 1e-8);
    }
    let mean_b = op.b_values().iter().sum::<f64>() / 4.0;
    assert!((t0[0] - mean_b).abs() < 1e-14);
}

#[test]
fn per_site_traces_agree_with_dense_matrix_for_large_period() {
    // For k < p the per-site trace equals the trace of the p × p periodic matrix.
    let op = p4();
    let j = periodic_matrix(&op).unwrap();
    let traces = conserved_traces(&op, 3).unwrap();
    let mut pow = j.clone();
    for (k, t) in traces.iter().enumerate() {
        assert!((pow.trace() / 4.0 - t).abs() < 1e-12, "k = {}", k + 1);
        pow = &pow * &j;
    }
}

#[test]
fn hamiltonian_is_conserved() {
    let op = p4();
    let chain = ParticleChain::from_operator(&op, 0.0).unwrap();
    let h0 = chain.hamiltonian();
    let later = integrate_toda(&TodaState::new(op, 0.0), 1.0, 1e-10).unwrap();
    let h1 = ParticleChain::from_operator(&later.op, 0.0).unwrap().hamiltonian();
    assert!((h0 - h1).abs() <= 1e-8, "{h0} vs {h1}");
}

#[test]
fn lax_residual_is_second_order() {
    let state = integrate_toda(&TodaState::new(p4(), 0.0), 0.3, 1e-13).unwrap();
    let res = |h: f64| {
        let before = integrate_toda(&state, state.t - h, 1e-13).unwrap();
        let after = integrate_toda(&state, state.t + h, 1e-13).unwrap();
        lax_residual(&before.op, &state.op, &after.op, h).unwrap()
    };
    let (r1, r2) = (res(1e-2), res(1e-3));
    let order = (r1 / r2).log10();
    assert!((1.8..=2.2).contains(&order), "order {order} from {r1:e}, {r2:e}");
}

#[test]
fn transfer_products_solve_the_recurrence() {
    let op = p4();
    let z = Complex64::new(0.37, 0.0);
    let (u0, u1) = (0.3, -1.1);
    let mut v = [Complex64::new(u1, 0.0), Complex64::new(op.a(0) * u0, 0.0)];
    let mut u = vec![u0, u1];
    for n in 0..20 {
        let t = transfer_matrix(&op, z, n, n + 1).unwrap();
        v = t.apply(v);
        u.push(v[0].re);
        assert!((v[1].re - op.a(n + 1) * u[n as usize + 1]).abs() < 1e-12);
    }
    for n in 1..u.len() - 1 {
        let ju = op.a(n as i64 - 1) * u[n - 1] + op.b(n as i64) * u[n] + op.a(n as i64) * u[n + 1];
        assert!((ju - z.re * u[n]).abs() <= 1e-12 * (1.0 + u[n].abs()), "site {n}");
    }
    let full = transfer_matrix(&op, z, 0, 20).unwrap();
    let end = full.apply([Complex64::new(u1, 0.0), Complex64::new(op.a(0) * u0, 0.0)]);
    assert!((end[0].re - u[21]).abs() <= 1e-10 * u[21].abs().max(1.0));
}

#[test]
fn wronskian_is_site_independent_and_antisymmetric() {
    let op = p4();
    let u = solve_recurrence(&op, 0.2, 0, 1.0, 0.5, 10);
    let v = solve_recurrence(&op, 0.2, 0, -0.3, 2.0, 10);
    let w0 = wronskian(&op, &u, &v, 0).unwrap();
    let w5 = wronskian(&op, &u, &v, 5).unwrap();
    assert!((w0 - w5).abs() < 1e-12);
    assert!((wronskian(&op, &v, &u, 3).unwrap() + w0).abs() < 1e-12);
    assert_eq!(wronskian(&op, &u, &u, 2).unwrap(), 0.0);
}

#[test]
fn wronskian_is_time_invariant() {
    let op = p2();
    let z = 0.7;
    let u = solve_recurrence(&op, z, -6, 1.0, 0.4, 14);
    let v = solve_recurrence(&op, z, -6, 0.2, -1.0, 14);
    let w0 = wronskian(&op, &u, &v, 0).unwrap();
    let times: Vec<f64> = (1..=10).map(|k| 0.1 * k as f64).collect();
    let run = integrate_with_solutions(&TodaState::new(op, 0.0), &[u, v], z, &times, 1e-11).unwrap();
    for (state, sols) in &run {
        let w = wronskian(&state.op, &sols[0], &sols[1], 0).unwrap();
        assert!((w - w0).abs() <= 1e-6, "t = {}: {w} vs {w0}", state.t);
    }
}

#[test]
fn lax_p_on_free_delta() {
    let op = JacobiOperator::window(-5, vec![0.5; 11], vec![0.0; 11]).unwrap();
    let mut u = vec![0.0; 11];
    u[5] = 1.0;
    let pu = lax_p_apply(&op, &u).unwrap();
    assert!((pu[6] + 0.5).abs() < 1e-15 && (pu[4] - 0.5).abs() < 1e-15);
    assert_eq!(apply_jacobi(&op, &[0.0; 11]).unwrap(), vec![0.0; 11]);
}

fn positive() -> impl Strategy<Value = f64> {
    0.3..2.0_f64
}

proptest! {
    #[test]
    fn flaschka_round_trip(q in prop::collection::vec(-2.0..2.0_f64, 2..8), p_seed in -1.0..1.0_f64) {
        let p: Vec<f64> = q.iter().map(|x| p_seed * x.sin()).collect();
        let (a, b) = flaschka(&p, &q).unwrap();
        let back = inverse_flaschka(&a[..q.len() - 1], &b, q[0]).unwrap();
        for (x, y) in back.q.iter().zip(&q) {
            prop_assert!((x - y).abs() <= 1e-14 * (1.0 + y.abs()) + 1e-14);
        }
        for (x, y) in back.p.iter().zip(&p) {
            prop_assert!((x - y).abs() <= 1e-14);
        }
    }

    #[test]
    fn p_is_skew_and_j_symmetric(a in prop::collection::vec(positive(), 3..7), shift in -1.0..1.0_f64) {
        let b: Vec<f64> = a.iter().map(|x| shift * x).collect();
        let op = JacobiOperator::periodic(a, b).unwrap();
        let j = periodic_matrix(&op).unwrap();
        let p = periodic_p_matrix(&op).unwrap();
        prop_assert_eq!(j.transpose(), j);
        prop_assert_eq!(p.transpose(), -p);
    }

    #[test]
    fn transfer_step_is_unimodular(a in prop::collection::vec(positive(), 2..5), re in -2.0..2.0_f64, im in -1.0..1.0_f64) {
        let n = a.len();
        let op = JacobiOperator::periodic(a, vec![0.1; n]).unwrap();
        let t = transfer_matrix(&op, Complex64::new(re, im), 0, 3).unwrap();
        prop_assert!((t.det() - 1.0).norm() < 1e-12);
    }
}
