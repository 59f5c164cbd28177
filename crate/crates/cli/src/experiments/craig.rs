//! Gap geometry, the Lipschitz bound of Ψ on random pairs, and running sups
//! along a family of truncations.
//!
//! Reads `params.pairs` (default 1000, drawn from `Pcg64(seed)`) and
//! `params.family_sizes` (no family table when absent).

use std::f64::consts::PI;

use rand::{RngExt, SeedableRng};
use rand_pcg::Pcg64;
use rayon::prelude::*;
use toda_core::flow::{craig_report, psi, tangent_norm, torus_distance};
use toda_core::{AngleVector, GapSet};

use super::Outcome;
use crate::config::ExperimentConfig;
use crate::error::Result;
use crate::report::{Check, ReportTable};

pub fn run(config: &ExperimentConfig) -> Result<Outcome> {
    let e = config.gap_set()?;
    let report = craig_report(&e);

    let mut gaps = ReportTable::new("", &["j", "lower", "upper", "gamma", "eta", "c"]);
    for (j, gap) in e.gaps().iter().enumerate() {
        gaps.push(vec![
            j as f64,
            gap.lower,
            gap.upper,
            report.gamma[j],
            report.eta[j],
            report.c[j],
        ]);
    }
    let mut summary = ReportTable::new("summary", &["gaps", "s1", "s2", "s3", "lipschitz_bound"]);
    summary.push(vec![
        e.len() as f64,
        report.s1,
        report.s2,
        report.s3,
        report.lipschitz_bound,
    ]);

    let pairs = config.params.pairs.unwrap_or(1000);
    let (worst, violations) = lipschitz_sample(&e, report.lipschitz_bound, pairs, config.seed)?;
    let mut lip = ReportTable::new("lipschitz", &["pairs", "max_ratio", "lipschitz_bound", "violations"]);
    lip.push(vec![pairs as f64, worst, report.lipschitz_bound, violations as f64]);

    let mut tables = vec![gaps, summary, lip];
    let mut checks = vec![Check::le("lipschitz_violations", violations as f64, 0.0)];
    if let Some(sizes) = &config.params.family_sizes {
        let mut sizes = sizes.clone();
        sizes.sort_unstable();
        let rows: Vec<Vec<f64>> = sizes
            .par_iter()
            .map(|&n| {
                let r = craig_report(&e.truncated(n).set);
                vec![n.min(e.len()) as f64, r.s1, r.s2, r.s3, r.lipschitz_bound]
            })
            .collect();
        let monotone = rows.windows(2).all(|w| (1..5).all(|c| w[1][c] >= w[0][c]));
        let mut family = ReportTable::new("family", &["gaps", "s1", "s2", "s3", "lipschitz_bound"]);
        for r in rows {
            family.push(r);
        }
        tables.push(family);
        checks.push(Check::holds("family_sups_nondecreasing", monotone));
    }
    Ok(Outcome { tables, checks })
}

/// Largest observed `‖Ψ(θ) − Ψ(φ)‖ / d(θ, φ)` and the count of pairs above `bound`.
fn lipschitz_sample(e: &GapSet, bound: f64, pairs: usize, seed: u64) -> Result<(f64, usize)> {
    let g = e.len();
    if g == 0 {
        return Ok((0.0, 0));
    }
    let mut rng = Pcg64::seed_from_u64(seed);
    let mut draw = || AngleVector((0..g).map(|_| rng.random_range(-PI..PI)).collect());
    let (mut worst, mut violations) = (0.0_f64, 0);
    for _ in 0..pairs {
        let (x, y) = (draw(), draw());
        let (px, py) = (psi(e, &x)?, psi(e, &y)?);
        let diff: Vec<f64> = px.iter().zip(&py).map(|(a, b)| a - b).collect();
        let d = torus_distance(e, &x, &y)?;
        if d == 0.0 {
            continue;
        }
        let ratio = tangent_norm(e, &diff) / d;
        worst = worst.max(ratio);
        if ratio > bound {
            violations += 1;
        }
    }
    Ok((worst, violations))
}
