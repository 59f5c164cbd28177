use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use toda_lab::{run, ExperimentConfig};

fn lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toda-lab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_config(dir: &Path, file: &str, body: &str) -> PathBuf {
    let path = dir.join(file);
    fs::write(&path, body).unwrap();
    path
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn list_presets_shows_the_defining_numbers() {
    let out = lab(&["list-presets"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let p2 = text.lines().find(|l| l.starts_with("p2-gap,")).expect("p2-gap row");
    assert!(p2.contains("a=(0.6,0.4), b=(0,0)"), "{p2}");
    for name in ["free", "p4-seed0", "synthetic-6gap", "synthetic-dyadic"] {
        assert!(
            text.lines().any(|l| l.starts_with(&format!("{name},"))),
            "{name} missing"
        );
    }
}

#[test]
fn validate_rejects_a_decreasing_time_grid() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "bad.json",
        r#"{"schema_version": 1, "experiment": "isospectrality", "name": "bad",
            "operator": {"preset": "p2-gap"}, "times": [0.0, 0.5, 0.4]}"#,
    );
    let out = lab(&["validate", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("not strictly increasing"), "{}", stderr(&out));
}

#[test]
fn validate_names_the_gap_that_overlaps_a_band_edge() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "overlap.json",
        r#"{"schema_version": 1, "experiment": "craig-report", "name": "overlap",
            "gap_set": {"lower": -1.0, "upper": 1.0, "gaps": [[-0.6, -0.4], [0.5, 1.2]]}}"#,
    );
    let out = lab(&["validate", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("gap 1 (0.5, 1.2)"), "{}", stderr(&out));
}

#[test]
fn validate_accepts_the_shipped_configs() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs");
    let mut seen = 0;
    for entry in fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let out = lab(&["validate", path.to_str().unwrap()]);
        assert!(out.status.success(), "{}: {}", path.display(), stderr(&out));
        seen += 1;
    }
    assert!(seen >= 10);
}

#[test]
fn craig_report_on_one_gap() {
    let cfg = ExperimentConfig::from_json(
        r#"{"schema_version": 1, "experiment": "craig-report", "name": "one",
            "gap_set": {"preset": "one-gap"}, "params": {"pairs": 50}}"#,
    )
    .unwrap();
    let report = run(&cfg).unwrap();
    let s1 = report.table("summary").unwrap().rows()[0][1];
    // γ = 0.4, η = 0.8, C = (2 − 0.8)^{1/2}.
    assert!((s1 - 0.4 * 1.2_f64.sqrt()).abs() < 1e-15);
    assert!((s1 - 0.43818).abs() < 5e-6);
    assert!(report.passed());
}

#[test]
fn identical_configs_give_identical_tables() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "approx.json",
        r#"{"schema_version": 1, "experiment": "approximation", "name": "approx",
            "gap_set": {"preset": "synthetic-dyadic", "size": 6}, "truncations": [1, 3],
            "times": {"start": 0.0, "stop": 1.0, "count": 11}, "seed": 42}"#,
    );
    let outputs: Vec<PathBuf> = ["1", "3"]
        .iter()
        .map(|threads| {
            let out_dir = dir.path().join(format!("run{threads}"));
            let out = Command::new(env!("CARGO_BIN_EXE_toda-lab"))
                .args(["run", cfg.to_str().unwrap(), "--out", out_dir.to_str().unwrap()])
                .env("TODA_LAB_THREADS", threads)
                .output()
                .unwrap();
            assert!(matches!(out.status.code(), Some(0 | 2)), "{}", stderr(&out));
            out_dir
        })
        .collect();
    for name in ["approx.csv", "approx.distance.csv"] {
        let a = fs::read(outputs[0].join(name)).unwrap();
        let b = fs::read(outputs[1].join(name)).unwrap();
        assert!(!a.is_empty());
        assert_eq!(a, b, "{name} differs between runs");
    }
    let meta = |p: &Path| -> serde_json::Value {
        let mut v: serde_json::Value = serde_json::from_slice(&fs::read(p.join("approx.meta.json")).unwrap()).unwrap();
        let obj = v.as_object_mut().unwrap();
        obj.remove("wall_time_seconds");
        obj.remove("threads");
        v
    };
    assert_eq!(meta(&outputs[0]), meta(&outputs[1]));
}

#[test]
fn csv_has_seventeen_significant_digits() {
    let cfg = ExperimentConfig::from_json(
        r#"{"schema_version": 1, "experiment": "craig-report", "name": "digits",
            "gap_set": {"preset": "two-gap"}, "params": {"pairs": 10}}"#,
    )
    .unwrap();
    let csv = run(&cfg).unwrap().tables[0].to_csv();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("j,lower,upper,gamma,eta,c"));
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first[1], "-5.0000000000000000e-1");
    for field in first {
        let mantissa = field.trim_start_matches('-').split('e').next().unwrap();
        assert_eq!(mantissa.replace('.', "").len(), 17, "{field}");
    }
}

#[test]
fn unknown_experiment_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "unknown.json",
        r#"{"schema_version": 1, "experiment": "lax-pair", "name": "x"}"#,
    );
    let out = lab(&["run", cfg.to_str().unwrap(), "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(
        stderr(&out).contains("unknown experiment 'lax-pair'"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn malformed_config_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "typo.json",
        r#"{"schema_version": 1, "experment": "craig-report", "name": "x"}"#,
    );
    let out = lab(&["run", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("malformed config"), "{}", stderr(&out));
}

#[test]
fn module_errors_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "range.json",
        r#"{"schema_version": 1, "experiment": "edge-crossing", "name": "x",
            "gap_set": {"preset": "one-gap"}, "params": {"gap_index": 3}}"#,
    );
    let out = lab(&["run", cfg.to_str().unwrap(), "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("gap_index 3"), "{}", stderr(&out));
}

#[test]
fn failed_checks_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "slow.json",
        r#"{"schema_version": 1, "experiment": "craig-report", "name": "slow",
            "gap_set": {"preset": "two-gap"}, "params": {"max_seconds": 1e-12}}"#,
    );
    let out = lab(&["run", cfg.to_str().unwrap(), "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let meta: serde_json::Value =
        serde_json::from_slice(&fs::read(dir.path().join("slow.meta.json")).unwrap()).unwrap();
    assert_eq!(meta["passed"], false);
    assert_eq!(meta["rng"], "Pcg64");
    assert_eq!(meta["config_sha256"].as_str().unwrap().len(), 64);
}
