mod common;

use std::f64::consts::PI;

use common::{one_gap, p2, p4, six_gap, two_gap};
use num_complex::Complex64;
use proptest::prelude::*;
use toda_core::flow::{integrate_dubrovin, trace_p, trace_q};
use toda_core::jacobi::JacobiOperator;
use toda_core::potential::{
    abel_inverse, abel_jacobian, abel_map, approximation_experiment, dos_vs_equilibrium, equilibrium_measure,
    geometric_mean, lyapunov_exponent, shift_character, shift_residual, thouless_values, toda_frequencies, translate,
    truncate_gapset, truncation_eigenvalues,
};
use toda_core::spectral::{angles_from_divisor, dirichlet_data, discriminant, periodic_spectrum};
use toda_core::{AbelGeometry, AbelImage, AngleVector, Error, GapSet};

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Green's function of `ℂ ∖ [a, b]`: `log|w + √(w² − 1)|`, `w = (2z − a − b)/(b − a)`,
/// taking the root with `|w + √(w² − 1)| ≥ 1`.
fn interval_green(a: f64, b: f64, z: Complex64) -> f64 {
    let w = (2.0 * z - a - b) / (b - a);
    let r = (w * w - 1.0).sqrt();
    (w + r).norm().max((w - r).norm()).ln()
}

/// The symmetric two-band set `[−1, −β] ∪ [β, 1]` maps onto `[β², 1]` under
/// `z ↦ z²`, so `g(z) = ½ g_{[β², 1]}(z²)`.
fn symmetric_green(beta: f64, z: Complex64) -> f64 {
    0.5 * interval_green(beta * beta, 1.0, z * z)
}

#[test]
fn symmetric_two_band_equilibrium_matches_closed_forms() {
    let beta = 0.2_f64;
    let eq = equilibrium_measure(&one_gap(), 64).unwrap();
    assert!((eq.capacity() - (1.0 - beta * beta).sqrt() / 2.0).abs() < 1e-12);
    assert!((eq.total_mass() - 1.0).abs() < 1e-12);
    for m in eq.band_masses() {
        assert!((m - 0.5).abs() < 1e-12);
    }
    for x in [0.25_f64, 0.5, 0.9, -0.7] {
        let expected = x.abs() / (PI * ((1.0 - x * x) * (x * x - beta * beta)).sqrt());
        assert!((eq.density(x) - expected).abs() < 1e-10 * expected, "ρ({x})");
    }
    for z in [
        c(2.0),
        c(0.0),
        c(0.1),
        Complex64::new(0.3, 0.4),
        Complex64::new(-1.5, 2.0),
    ] {
        let expected = symmetric_green(beta, z);
        assert!(
            (eq.green(z) - expected).abs() < 1e-10,
            "g({z}) = {} vs {expected}",
            eq.green(z)
        );
    }
}

#[test]
fn free_set_green_function_at_two() {
    let eq = equilibrium_measure(&GapSet::interval(-1.0, 1.0).unwrap(), 32).unwrap();
    assert!((eq.green(c(2.0)) - (2.0 + 3f64.sqrt()).ln()).abs() < 1e-8);
    assert!((eq.capacity() - 0.5).abs() < 1e-14);
}

#[test]
fn green_function_vanishes_on_the_set() {
    for e in [one_gap(), two_gap(), six_gap()] {
        let eq = equilibrium_measure(&e, 32).unwrap();
        for b in e.bands() {
            for k in 0..=10 {
                let x = b.lower + b.width() * k as f64 / 10.0;
                assert!(eq.green(c(x)).abs() <= 1e-6, "g({x}) = {}", eq.green(c(x)));
            }
        }
        assert!((eq.total_mass() - 1.0).abs() < 1e-10);
        assert!((eq.cdf(e.upper() + 1.0) - 1.0).abs() < 1e-10 && eq.cdf(e.lower() - 1.0) == 0.0);
    }
}

#[test]
fn gap_midpoint_green_function_is_positive_and_cdf_is_flat_in_gaps() {
    let e = two_gap();
    let eq = equilibrium_measure(&e, 32).unwrap();
    for g in e.gaps() {
        assert!(eq.green(c(g.midpoint())) > 1e-3);
        assert!((eq.cdf(g.lower) - eq.cdf(g.upper)).abs() < 1e-12);
        assert_eq!(eq.density(g.midpoint()), 0.0);
    }
}

#[test]
fn xi_is_monotone_through_its_gap_with_band_boundary_values() {
    let e = two_gap();
    let geo = AbelGeometry::new(&e).unwrap();
    let h = geo.harmonic();
    for j in 0..2 {
        for (b, band) in e.bands().iter().enumerate() {
            let expected = if b > j { 1.0 } else { 0.0 };
            let x = band.midpoint();
            assert!((h.xi(j, x).unwrap() - expected).abs() < 1e-10, "ξ_{j} on band {b}");
        }
        let g = e.gap(j);
        let vals: Vec<f64> = (0..=100)
            .map(|k| h.xi(j, g.lower + g.width() * k as f64 / 100.0).unwrap())
            .collect();
        assert!(vals[0].abs() < 1e-10 && (vals[100] - 1.0).abs() < 1e-10);
        assert!(vals.windows(2).all(|w| w[1] >= w[0]));
        let other = e.gap(1 - j);
        for k in 0..=20 {
            let v = h.xi(j, other.lower + other.width() * k as f64 / 20.0).unwrap();
            assert!((-1e-12..=1.0 + 1e-12).contains(&v), "ξ_{j} = {v} on the other gap");
        }
    }
}

#[test]
fn xi_of_symmetric_set_is_half_at_the_centre() {
    let geo = AbelGeometry::new(&one_gap()).unwrap();
    assert!((geo.harmonic().xi(0, 0.0).unwrap() - 0.5).abs() < 1e-12);
    assert!((geo.harmonic().xi(0, 0.1).unwrap() + geo.harmonic().xi(0, -0.1).unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn abel_jacobian_matches_finite_differences() {
    let geo = AbelGeometry::new(&two_gap()).unwrap();
    let h = 1e-6;
    for phi in [[0.3, 2.0], [-1.2, 0.4], [2.8, -2.9]] {
        let phi = AngleVector(phi.to_vec());
        let jac = abel_jacobian(&geo, &phi).unwrap();
        for k in 0..2 {
            let (mut up, mut down) = (phi.clone(), phi.clone());
            up.0[k] += h;
            down.0[k] -= h;
            let (a, b) = (abel_map(&geo, &up).unwrap(), abel_map(&geo, &down).unwrap());
            for j in 0..2 {
                let d = (a.0[j] - b.0[j] + PI).rem_euclid(2.0 * PI) - PI;
                assert!((d / (2.0 * h) - jac[(j, k)]).abs() < 1e-6, "({j}, {k})");
            }
        }
    }
}

#[test]
fn abel_inverse_round_trips_on_two_gaps() {
    let geo = AbelGeometry::new(&two_gap()).unwrap();
    for phi in [[0.3, 2.0], [-1.2, 0.4], [3.0, -3.0], [0.0, PI]] {
        let phi = AngleVector(phi.to_vec());
        let a = abel_map(&geo, &phi).unwrap();
        let back = abel_inverse(&geo, &a, &AngleVector(vec![1.0, 1.0])).unwrap();
        let again = abel_map(&geo, &back).unwrap();
        for j in 0..2 {
            let d = (again.0[j] - a.0[j]).rem_euclid(2.0 * PI);
            assert!(d.min(2.0 * PI - d) < 1e-11);
        }
    }
}

#[test]
fn shift_character_validates_on_periodic_operators() {
    for op in [p2(), p4()] {
        let e = periodic_spectrum(&op).unwrap();
        let geo = AbelGeometry::new(&e).unwrap();
        let r = shift_residual(&geo, &op).unwrap();
        assert!(r <= 1e-5, "{r}");
    }
}

#[test]
fn traces_along_shifted_divisors_reproduce_the_coefficients() {
    let op = p4();
    let e = periodic_spectrum(&op).unwrap();
    let geo = AbelGeometry::new(&e).unwrap();
    let alpha = shift_character(&geo);
    let mut phi = angles_from_divisor(&e, &dirichlet_data(&op, &e, 0).unwrap()).unwrap();
    for n in 0..=8_i64 {
        let q = trace_q(&e, &phi).unwrap();
        assert!((q - op.b(n)).abs() <= 1e-8, "b_{n}: {q} vs {}", op.b(n));
        let p = trace_p(Some(&geo), &phi, &alpha).unwrap();
        assert!((p - op.a(n)).abs() <= 1e-6, "a_{n}: {p} vs {}", op.a(n));
        phi = translate(&geo, &phi, &alpha).unwrap();
    }
}

#[test]
fn trace_p_on_the_free_set_and_p2() {
    let free = AbelGeometry::new(&GapSet::interval(-1.0, 1.0).unwrap()).unwrap();
    let p = trace_p(Some(&free), &AngleVector(vec![]), &AbelImage(vec![])).unwrap();
    assert!((p - 0.5).abs() <= 1e-8);
    let op = p2();
    let e = periodic_spectrum(&op).unwrap();
    let geo = AbelGeometry::new(&e).unwrap();
    let phi = angles_from_divisor(&e, &dirichlet_data(&op, &e, 0).unwrap()).unwrap();
    let p = trace_p(Some(&geo), &phi, &shift_character(&geo)).unwrap();
    assert!((p - 0.6).abs() <= 1e-4, "{p}");
    assert!(matches!(
        trace_p(None, &phi, &shift_character(&geo)),
        Err(Error::MissingDependency(_))
    ));
}

#[test]
fn abel_map_linearizes_the_flow() {
    let e = one_gap();
    let geo = AbelGeometry::new(&e).unwrap();
    let period = {
        let f = toda_core::flow::DubrovinField::new(e.clone());
        toda_core::flow::time_to_reach(&f, &AngleVector(vec![0.4]), 0, 0.4 + 2.0 * PI, 1e-12).unwrap()
    };
    let fit = |samples: usize| {
        let times: Vec<f64> = (0..=samples)
            .map(|k| 3.0 * period * k as f64 / samples as f64)
            .collect();
        let traj = integrate_dubrovin(&e, &AngleVector(vec![0.4]), &times, 1e-12).unwrap();
        toda_frequencies(&geo, &traj).unwrap()
    };
    let coarse = fit(300);
    let fine = fit(1200);
    assert!(coarse.residual <= 1e-4, "{}", coarse.residual);
    assert!((coarse.zeta[0] - fine.zeta[0]).abs() <= 1e-6);
    assert!((coarse.zeta[0] - geo.harmonic().frequency(0)).abs() <= 1e-6);
    // 𝒜 = π − φ mod 2π on a symmetric gap, so one circulation lowers it by 2π.
    assert!((coarse.zeta[0] + 2.0 * PI / period).abs() <= 1e-6);
}

#[test]
fn linearization_on_two_gaps() {
    let e = two_gap();
    let geo = AbelGeometry::new(&e).unwrap();
    let times: Vec<f64> = (0..=2000).map(|k| 0.005 * k as f64).collect();
    let traj = integrate_dubrovin(&e, &AngleVector(vec![0.4, -1.0]), &times, 1e-12).unwrap();
    let f = toda_frequencies(&geo, &traj).unwrap();
    assert!(f.residual <= 1e-4, "{}", f.residual);
    for j in 0..2 {
        assert!((f.zeta[j] - geo.harmonic().frequency(j)).abs() <= 1e-6);
    }
}

#[test]
fn too_few_samples_for_frequencies() {
    let e = one_gap();
    let geo = AbelGeometry::new(&e).unwrap();
    let traj = integrate_dubrovin(&e, &AngleVector(vec![0.0]), &[0.1, 0.2], 1e-10).unwrap();
    assert!(matches!(
        toda_frequencies(&geo, &traj),
        Err(Error::TooFewSamples { .. })
    ));
}

#[test]
fn density_of_states_approaches_the_equilibrium_measure() {
    let op = p2();
    let eq = equilibrium_measure(&periodic_spectrum(&op).unwrap(), 32).unwrap();
    let grid: Vec<f64> = (0..=400).map(|k| -1.1 + 2.2 * k as f64 / 400.0).collect();
    let d500 = dos_vs_equilibrium(&op, &eq, 500, &grid).unwrap();
    let d2000 = dos_vs_equilibrium(&op, &eq, 2000, &grid).unwrap();
    assert!(d2000 <= 0.01, "{d2000}");
    assert!(d2000 < d500);
}

#[test]
fn thouless_formula_on_the_free_set() {
    let free = JacobiOperator::free();
    let eq = equilibrium_measure(&GapSet::interval(-1.0, 1.0).unwrap(), 32).unwrap();
    let eig = truncation_eigenvalues(&free, 2000).unwrap();
    // Points of E placed between consecutive eigenvalues.
    let inside: Vec<f64> = (0..10)
        .map(|k| 0.5 * (eig[150 * k + 200] + eig[150 * k + 201]))
        .collect();
    for (x, v) in inside.iter().zip(thouless_values(&eq, &eig, &inside)) {
        assert!(v.abs() <= 0.01, "L̂({x}) = {v}");
    }
    let v2 = thouless_values(&eq, &eig, &[2.0])[0];
    assert!((v2 - eq.green(c(2.0))).abs() <= 1e-3);
}

#[test]
fn lyapunov_exponent_is_the_green_function_off_the_spectrum() {
    let op = p2();
    let eq = equilibrium_measure(&periodic_spectrum(&op).unwrap(), 32).unwrap();
    for x in [1.5, 0.1, -3.0] {
        // Floquet oracle: the monodromy eigenvalue ρ with |ρ| > 1 gives γ = log|ρ|/p.
        let d = discriminant(&op, c(x)).unwrap().re;
        let rho = 0.5 * (d.abs() + (d * d - 4.0).sqrt());
        let floquet = rho.ln() / 2.0;
        let l = lyapunov_exponent(&op, x, 20_000).unwrap();
        assert!((l - floquet).abs() < 1e-3, "{x}: {l} vs {floquet}");
        assert!((floquet - eq.green(c(x))).abs() < 1e-8, "{x}");
    }
    assert!(lyapunov_exponent(&op, 0.5, 20_000).unwrap().abs() < 1e-3);
}

#[test]
fn geometric_mean_equals_capacity() {
    for op in [p2(), p4()] {
        let eq = equilibrium_measure(&periodic_spectrum(&op).unwrap(), 32).unwrap();
        let gm = geometric_mean(&op, 4000).unwrap();
        assert!((gm - eq.capacity()).abs() <= 1e-6, "{gm} vs {}", eq.capacity());
    }
    assert!((geometric_mean(&p2(), 1000).unwrap() - 0.24f64.sqrt()).abs() < 1e-12);
}

#[test]
fn approximation_with_all_gaps_is_exact() {
    let e = two_gap();
    let times: Vec<f64> = (0..=20).map(|k| 0.1 * k as f64).collect();
    let r = approximation_experiment(&e, &AngleVector(vec![0.3, 1.0]), &[2, 5], &times, 1e-10).unwrap();
    for row in &r.rows {
        assert!(row.distance.iter().all(|&d| d == 0.0));
        assert_eq!(row.k, 0.0);
        assert!(row.within_envelope);
    }
    assert!(!r.rows[0].clamped && r.rows[1].clamped);
    let (t, clamped) = truncate_gapset(&e, 1);
    assert_eq!(t.kept, vec![0]);
    assert!(!clamped);
}

#[test]
fn truncation_improves_the_approximation_on_six_gaps() {
    let e = six_gap();
    let f = AngleVector(vec![0.3, -1.0, 2.0, 0.7, -2.5, 1.4]);
    let times: Vec<f64> = (0..=40).map(|k| 0.05 * k as f64).collect();
    let r = approximation_experiment(&e, &f, &[2, 4, 6], &times, 1e-10).unwrap();
    let (k2, k4) = (r.rows[0].k, r.rows[1].k);
    assert!(k4 < k2, "K_4 = {k4}, K_2 = {k2}");
    for row in &r.rows {
        assert!(row.within_envelope, "N = {}", row.n);
        assert!(row.slope <= 4.0 * r.m);
    }
    assert_eq!(r.rows[0].kept, vec![0, 1]);
    assert!(r.rows[2].distance.iter().all(|&d| d == 0.0));
}

#[test]
fn too_few_times_for_the_approximation_fit() {
    let r = approximation_experiment(&two_gap(), &AngleVector(vec![0.0, 0.0]), &[1], &[0.0, 1.0], 1e-10);
    assert!(matches!(r, Err(Error::TooFewSamples { .. })));
}

proptest! {
    #[test]
    fn green_function_is_nonnegative(re in -3.0..3.0_f64, im in -2.0..2.0_f64) {
        let eq = equilibrium_measure(&two_gap(), 32).unwrap();
        let g = eq.green(Complex64::new(re, im));
        prop_assert!(g >= -1e-10 && g.is_finite(), "g = {}", g);
    }

    #[test]
    fn density_is_nonnegative(x in -1.0..1.0_f64) {
        let eq = equilibrium_measure(&six_gap(), 32).unwrap();
        prop_assert!(eq.density(x) >= 0.0);
    }

    #[test]
    fn abel_image_is_reduced(a in -10.0..10.0_f64, b in -10.0..10.0_f64) {
        let geo = AbelGeometry::new(&two_gap()).unwrap();
        let img = abel_map(&geo, &AngleVector(vec![a, b])).unwrap();
        prop_assert!(img.0.iter().all(|&v| (0.0..2.0 * PI).contains(&v)));
    }
}
