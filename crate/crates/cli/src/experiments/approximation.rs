//! Distance between the flow on `E` and the lifted flows of its truncations.
//!
//! `truncations` defaults to `[2, 4, 6]` and must increase. The start point is
//! `params.initial_angles`, or uniform on the torus from `Pcg64(seed)`.

use std::f64::consts::PI;

use rand::{RngExt, SeedableRng};
use rand_pcg::Pcg64;
use rayon::prelude::*;
use toda_core::potential::approximation_experiment;
use toda_core::AngleVector;

use super::{table, Outcome};
use crate::config::{ExperimentConfig, TimeGrid};
use crate::error::{LabError, Result};
use crate::report::{Check, ReportTable};

pub fn run(config: &ExperimentConfig) -> Result<Outcome> {
    let e = config.gap_set()?;
    let g = e.len();
    let levels = if config.truncations.is_empty() {
        vec![2, 4, 6]
    } else {
        config.truncations.clone()
    };
    if levels.windows(2).any(|w| w[1] <= w[0]) {
        return Err(LabError::Config("truncations must be strictly increasing".into()));
    }
    let start = match &config.params.initial_angles {
        Some(a) => AngleVector(a.clone()),
        None => {
            let mut rng = Pcg64::seed_from_u64(config.seed);
            AngleVector((0..g).map(|_| rng.random_range(-PI..PI)).collect())
        }
    };
    let times = config.times_or(TimeGrid::Uniform {
        start: 0.0,
        stop: 2.0,
        count: 41,
    });
    let tol = config.tol_or(1e-10);
    let reports = levels
        .par_iter()
        .map(|&n| approximation_experiment(&e, &start, &[n], &times, tol))
        .collect::<toda_core::Result<Vec<_>>>()?;
    let m = reports[0].m;
    let rows: Vec<_> = reports
        .into_iter()
        .map(|r| r.rows.into_iter().next().expect("one level"))
        .collect();

    let mut main = ReportTable::new(
        "",
        &[
            "n",
            "gaps_kept",
            "clamped",
            "k",
            "slope",
            "field_gap",
            "within_envelope",
            "m",
        ],
    );
    let mut columns = vec!["t".to_string()];
    columns.extend(rows.iter().map(|r| format!("distance_n{}", r.n)));
    let mut distance = table("distance", columns);
    for (i, t) in times.iter().enumerate() {
        let mut row = vec![*t];
        row.extend(rows.iter().map(|r| r.distance[i]));
        distance.push(row);
    }
    let mut decreasing = true;
    for (i, r) in rows.iter().enumerate() {
        main.push(vec![
            r.n as f64,
            r.kept.len() as f64,
            f64::from(u8::from(r.clamped)),
            r.k,
            r.slope,
            r.field_gap,
            f64::from(u8::from(r.within_envelope)),
            m,
        ]);
        if i > 0 {
            let prev = rows[i - 1].k;
            decreasing &= if prev == 0.0 { r.k == 0.0 } else { r.k < prev };
        }
    }
    let slope_excess = rows
        .iter()
        .filter(|r| r.k > 0.0)
        .map(|r| r.slope - 4.0 * m)
        .fold(f64::NEG_INFINITY, f64::max);
    let mut checks = vec![
        Check::holds("intercepts_decrease", decreasing),
        Check::holds("within_single_exponential", rows.iter().all(|r| r.within_envelope)),
    ];
    if slope_excess.is_finite() {
        checks.push(Check::le("slope_minus_4m", slope_excess, 0.0));
    }
    Ok(Outcome {
        tables: vec![main, distance],
        checks,
    })
}
