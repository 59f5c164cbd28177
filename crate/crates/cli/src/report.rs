//! Result tables, tolerance checks and their serialization.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::config::{ExperimentConfig, SCHEMA_VERSION};
use crate::error::{LabError, Result};

/// A rectangular numeric table.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportTable {
    /// Empty for the main table, which is written to `<name>.csv`; others go
    /// to `<name>.<suffix>.csv`.
    pub suffix: String,
    pub columns: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl ReportTable {
    pub fn new(suffix: &str, columns: &[&str]) -> Self {
        Self {
            suffix: suffix.to_string(),
            columns: columns.iter().map(|c| (*c).to_string()).collect(),
            rows: Vec::new(),
        }
    }

    /// # Panics
    /// If the row length differs from the column count.
    pub fn push(&mut self, row: Vec<f64>) {
        assert_eq!(row.len(), self.columns.len(), "row length in table '{}'", self.suffix);
        self.rows.push(row);
    }

    #[must_use]
    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    /// Value in the first row whose column `key` equals `value`.
    #[must_use]
    pub fn lookup(&self, key: &str, value: f64, column: &str) -> Option<f64> {
        let k = self.columns.iter().position(|c| c == key)?;
        let c = self.columns.iter().position(|c| c == column)?;
        self.rows.iter().find(|r| r[k] == value).map(|r| r[c])
    }

    /// `.`-decimal, 17 significant digits, `\n` line ends.
    #[must_use]
    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            for (i, v) in row.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                // Negative zero prints as zero.
                let v = if *v == 0.0 { 0.0 } else { *v };
                write!(out, "{v:.16e}").expect("writing to a string");
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = ">")]
    Gt,
}

impl Relation {
    #[must_use]
    pub fn symbol(self) -> &'static str {
        match self {
            Self::Le => "<=",
            Self::Lt => "<",
            Self::Ge => ">=",
            Self::Gt => ">",
        }
    }
}

/// A named tolerance check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub relation: Relation,
    pub bound: f64,
    pub passed: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, value: f64, relation: Relation, bound: f64) -> Self {
        let passed = match relation {
            Relation::Le => value <= bound,
            Relation::Lt => value < bound,
            Relation::Ge => value >= bound,
            Relation::Gt => value > bound,
        };
        Self {
            name: name.into(),
            value,
            relation,
            bound,
            passed,
        }
    }

    pub fn le(name: impl Into<String>, value: f64, bound: f64) -> Self {
        Self::new(name, value, Relation::Le, bound)
    }

    pub fn lt(name: impl Into<String>, value: f64, bound: f64) -> Self {
        Self::new(name, value, Relation::Lt, bound)
    }

    pub fn ge(name: impl Into<String>, value: f64, bound: f64) -> Self {
        Self::new(name, value, Relation::Ge, bound)
    }

    pub fn gt(name: impl Into<String>, value: f64, bound: f64) -> Self {
        Self::new(name, value, Relation::Gt, bound)
    }

    /// A boolean condition recorded as `1 >= 1` or `0 >= 1`.
    pub fn holds(name: impl Into<String>, ok: bool) -> Self {
        Self::new(name, f64::from(u8::from(ok)), Relation::Ge, 1.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub experiment: String,
    pub name: String,
    pub tables: Vec<ReportTable>,
    pub checks: Vec<Check>,
    pub wall_time_seconds: f64,
}

impl Report {
    #[must_use]
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    #[must_use]
    pub fn table(&self, suffix: &str) -> Option<&ReportTable> {
        self.tables.iter().find(|t| t.suffix == suffix)
    }

    #[must_use]
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn file_name(&self, suffix: &str, ext: &str) -> String {
        if suffix.is_empty() {
            format!("{}.{ext}", self.name)
        } else {
            format!("{}.{suffix}.{ext}", self.name)
        }
    }

    /// Writes one CSV per table and `<name>.meta.json` into `dir`, returning
    /// the paths written.
    pub fn write(&self, dir: &Path, config: &ExperimentConfig) -> Result<Vec<PathBuf>> {
        std::fs::create_dir_all(dir).map_err(|source| LabError::Write {
            path: dir.to_path_buf(),
            source,
        })?;
        let mut written = Vec::new();
        let mut put = |name: String, body: String| -> Result<()> {
            let path = dir.join(name);
            std::fs::write(&path, body).map_err(|source| LabError::Write {
                path: path.clone(),
                source,
            })?;
            written.push(path);
            Ok(())
        };
        for table in &self.tables {
            put(self.file_name(&table.suffix, "csv"), table.to_csv())?;
        }
        let meta = self.metadata(config);
        let body = serde_json::to_string_pretty(&meta)? + "\n";
        put(self.file_name("meta", "json"), body)?;
        Ok(written)
    }

    #[must_use]
    pub fn metadata(&self, config: &ExperimentConfig) -> Metadata {
        Metadata {
            schema_version: SCHEMA_VERSION,
            experiment: self.experiment.clone(),
            name: self.name.clone(),
            config_sha256: config_digest(config),
            toda_lab_version: env!("CARGO_PKG_VERSION"),
            wall_time_seconds: self.wall_time_seconds,
            rng: "Pcg64",
            seed: config.seed,
            threads: rayon::current_num_threads(),
            tables: self.tables.iter().map(|t| self.file_name(&t.suffix, "csv")).collect(),
            checks: self.checks.clone(),
            passed: self.passed(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Metadata {
    pub schema_version: u32,
    pub experiment: String,
    pub name: String,
    pub config_sha256: String,
    pub toda_lab_version: &'static str,
    pub wall_time_seconds: f64,
    pub rng: &'static str,
    pub seed: u64,
    pub threads: usize,
    pub tables: Vec<String>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

/// SHA-256 of the canonical JSON form of the config.
#[must_use]
pub fn config_digest(config: &ExperimentConfig) -> String {
    let digest = Sha256::digest(config.canonical_json().as_bytes());
    digest.iter().fold(String::with_capacity(64), |mut s, b| {
        write!(s, "{b:02x}").expect("writing to a string");
        s
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    #[should_panic(expected = "row length")]
    fn rows_must_match_the_columns() {
        let mut t = ReportTable::new("x", &["a", "b"]);
        t.push(vec![1.0, 2.0]);
        t.push(vec![1.0]);
    }

    #[test]
    fn csv_format() {
        let mut t = ReportTable::new("", &["a", "b"]);
        t.push(vec![0.1, -0.0]);
        assert_eq!(t.to_csv(), "a,b\n1.0000000000000001e-1,0.0000000000000000e0\n");
        assert_eq!(t.lookup("a", 0.1, "b"), Some(-0.0));
    }

    #[test]
    fn check_relations() {
        assert!(Check::le("x", 1.0, 1.0).passed);
        assert!(!Check::lt("x", 1.0, 1.0).passed);
        assert!(Check::ge("x", 1.0, 1.0).passed);
        assert!(!Check::gt("x", 1.0, 1.0).passed);
        assert!(!Check::le("x", f64::NAN, 1.0).passed);
        assert!(Check::holds("x", true).passed && !Check::holds("x", false).passed);
    }
}
