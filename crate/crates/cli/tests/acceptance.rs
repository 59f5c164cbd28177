//! The ten acceptance criteria, each run from its config in `configs/`.
//! Prints one PASS/FAIL line per criterion and exits nonzero on any failure.

use std::path::Path;
use std::process::ExitCode;

use toda_lab::{run, Check, ExperimentConfig};

const CRITERIA: [(&str, &str, &[&str]); 10] = [
    ("C1", "isospectrality", &["c1-isospectrality"]),
    ("C2", "M-matrix flow law, order check", &["c2-mmatrix-flow"]),
    ("C3", "Wronskian invariance", &["c3-wronskian"]),
    ("C4", "Dubrovin consistency", &["c4-dubrovin-vs-direct"]),
    (
        "C5",
        "Lipschitz bound",
        &["c5-lipschitz-one-gap", "c5-lipschitz-two-gap"],
    ),
    ("C6", "edge dwell time", &["c6-edge-crossing"]),
    ("C7", "linearization", &["c7-linearization"]),
    ("C8", "finite-gap approximation", &["c8-approximation"]),
    ("C9", "DOS, Thouless, geometric mean", &["c9-appendix-a"]),
    ("C10", "trace formulas", &["c10-traces-p2-gap", "c10-traces-p4-seed0"]),
];

fn main() -> ExitCode {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs");
    let mut failures = 0;
    for (id, title, configs) in CRITERIA {
        let mut checks: Vec<Check> = Vec::new();
        let mut errors = Vec::new();
        for name in configs {
            let path = dir.join(format!("{name}.json"));
            match ExperimentConfig::load(&path).and_then(|c| run(&c)) {
                Ok(report) => checks.extend(report.checks.into_iter().map(|mut c| {
                    if configs.len() > 1 {
                        c.name = format!("{name}/{}", c.name);
                    }
                    c
                })),
                Err(e) => errors.push(format!("{name}: {e}")),
            }
        }
        let passed = errors.is_empty() && !checks.is_empty() && checks.iter().all(|c| c.passed);
        if !passed {
            failures += 1;
        }
        let detail: Vec<String> = checks
            .iter()
            .map(|c| {
                let mark = if c.passed { "" } else { " [violated]" };
                format!(
                    "{} = {:.3e} {} {:e}{mark}",
                    c.name,
                    c.value,
                    c.relation.symbol(),
                    c.bound
                )
            })
            .chain(errors.iter().map(|e| format!("error: {e}")))
            .collect();
        println!(
            "{} {id} {title}: {}",
            if passed { "PASS" } else { "FAIL" },
            detail.join("; ")
        );
    }
    if failures == 0 {
        println!("acceptance: all {} criteria passed", CRITERIA.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failures} of {} criteria failed", CRITERIA.len());
        ExitCode::FAILURE
    }
}
