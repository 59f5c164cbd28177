//! Experiment configuration files.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use toda_core::spectral::{periodic_spectrum, Gap};
use toda_core::{GapSet, JacobiOperator};

use crate::error::{LabError, Result};
use crate::presets::{random_periodic, Preset};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXPERIMENTS: [&str; 8] = [
    "isospectrality",
    "dubrovin-vs-direct",
    "mmatrix-flow",
    "craig-report",
    "linearization",
    "approximation",
    "appendix-a",
    "edge-crossing",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    Isospectrality,
    DubrovinVsDirect,
    MMatrixFlow,
    CraigReport,
    Linearization,
    Approximation,
    AppendixA,
    EdgeCrossing,
}

impl Experiment {
    pub fn parse(name: &str) -> Result<Self> {
        Ok(match name {
            "isospectrality" => Self::Isospectrality,
            "dubrovin-vs-direct" => Self::DubrovinVsDirect,
            "mmatrix-flow" => Self::MMatrixFlow,
            "craig-report" => Self::CraigReport,
            "linearization" => Self::Linearization,
            "approximation" => Self::Approximation,
            "appendix-a" => Self::AppendixA,
            "edge-crossing" => Self::EdgeCrossing,
            other => return Err(LabError::UnknownExperiment(other.to_string())),
        })
    }
}

/// A named preset, explicit periodic coefficients, or a random periodic
/// operator drawn from the config seed.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub random_period: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GapSetSpec {
    /// `"from-operator"`.
    Keyword(String),
    Preset {
        preset: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        size: Option<usize>,
    },
    Explicit {
        lower: f64,
        upper: f64,
        gaps: Vec<[f64; 2]>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TimeGrid {
    Uniform { start: f64, stop: f64, count: usize },
    Explicit(Vec<f64>),
}

impl TimeGrid {
    #[must_use]
    pub fn values(&self) -> Vec<f64> {
        match self {
            Self::Uniform { start, stop, count } => match *count {
                0 => Vec::new(),
                1 => vec![*start],
                n => (0..n)
                    .map(|k| start + (stop - start) * k as f64 / (n - 1) as f64)
                    .collect(),
            },
            Self::Explicit(v) => v.clone(),
        }
    }
}

/// Experiment-specific knobs; each experiment documents the ones it reads.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eval_times: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wronskian_energy: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial_angles: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gap_index: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deltas: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub circulations: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples_per_circulation: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairs: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family_sizes: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dos_size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid_points: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lyapunov_steps: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cells: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_seconds: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub schema_version: u32,
    pub experiment: String,
    /// Stem of the output files.
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub operator: Option<OperatorSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gap_set: Option<GapSetSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub times: Option<TimeGrid>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub truncations: Vec<usize>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
    #[serde(default)]
    pub params: Params,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| LabError::Read {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(&text)
    }

    /// Canonical serialization, used for the config digest.
    #[must_use]
    pub fn canonical_json(&self) -> String {
        serde_json::to_string(self).expect("configs always serialize")
    }

    pub fn kind(&self) -> Result<Experiment> {
        Experiment::parse(&self.experiment)
    }

    /// The operator, if one is configured.
    pub fn operator(&self) -> Result<Option<JacobiOperator>> {
        let Some(spec) = &self.operator else {
            return Ok(None);
        };
        let forms = [
            spec.preset.is_some(),
            spec.a.is_some() || spec.b.is_some(),
            spec.random_period.is_some(),
        ];
        if forms.iter().filter(|&&f| f).count() != 1 {
            return Err(LabError::Config(
                "operator needs exactly one of `preset`, `a`/`b`, `random_period`".into(),
            ));
        }
        if let Some(name) = &spec.preset {
            let preset = Preset::parse(name)?;
            return preset
                .operator()
                .map(Some)
                .ok_or_else(|| LabError::Config(format!("preset '{name}' is a gap set, not an operator")));
        }
        if let Some(p) = spec.random_period {
            if p == 0 {
                return Err(LabError::Config("random_period must be positive".into()));
            }
            return Ok(Some(random_periodic(p, self.seed)?));
        }
        let (Some(a), Some(b)) = (&spec.a, &spec.b) else {
            return Err(LabError::Config("explicit operators need both `a` and `b`".into()));
        };
        Ok(Some(JacobiOperator::periodic(a.clone(), b.clone())?))
    }

    pub fn require_operator(&self) -> Result<JacobiOperator> {
        self.operator()?
            .ok_or_else(|| LabError::Config(format!("experiment '{}' needs an `operator`", self.experiment)))
    }

    /// The gap set: explicit, a preset, or the spectrum of the operator.
    /// Without a `gap_set` entry the operator's spectrum is used.
    pub fn gap_set(&self) -> Result<GapSet> {
        match &self.gap_set {
            None => self.spectrum_of_operator(),
            Some(GapSetSpec::Keyword(k)) if k == "from-operator" => self.spectrum_of_operator(),
            Some(GapSetSpec::Keyword(k)) => Err(LabError::Config(format!(
                "gap_set must be \"from-operator\", a preset or explicit edges, got \"{k}\""
            ))),
            Some(GapSetSpec::Preset { preset, size }) => Preset::parse(preset)?.gap_set(*size),
            Some(GapSetSpec::Explicit { lower, upper, gaps }) => Ok(GapSet::new(
                *lower,
                *upper,
                gaps.iter().map(|g| Gap::new(g[0], g[1])).collect(),
            )?),
        }
    }

    fn spectrum_of_operator(&self) -> Result<GapSet> {
        let op = self
            .operator()?
            .ok_or_else(|| LabError::Config("gap set \"from-operator\" needs an `operator`".into()))?;
        Ok(periodic_spectrum(&op)?)
    }

    pub fn times_or(&self, default: TimeGrid) -> Vec<f64> {
        self.times.clone().unwrap_or(default).values()
    }

    #[must_use]
    pub fn tol_or(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }
}

/// Problems found without running the experiment. Empty means valid.
#[must_use]
pub fn validate(config: &ExperimentConfig) -> Vec<String> {
    let mut out = Vec::new();
    if config.schema_version != SCHEMA_VERSION {
        out.push(format!(
            "schema_version {} is not supported (expected {SCHEMA_VERSION})",
            config.schema_version
        ));
    }
    let kind = match config.kind() {
        Ok(k) => Some(k),
        Err(e) => {
            out.push(e.to_string());
            None
        }
    };
    if config.name.is_empty() || config.name.contains(['/', '\\']) {
        out.push(format!("name '{}' must be a nonempty file stem", config.name));
    }
    if let Some(t) = &config.times {
        let v = t.values();
        if let Some(w) = v.windows(2).find(|w| !(w[1] > w[0])) {
            out.push(format!("time grid is not strictly increasing: {} then {}", w[0], w[1]));
        }
        if v.iter().any(|x| !x.is_finite() || *x < 0.0) {
            out.push("time grid must hold finite, nonnegative times".into());
        }
    }
    if let Some(tol) = config.tol {
        if !(tol > 0.0 && tol.is_finite()) {
            out.push(format!("tol must be positive, got {tol}"));
        }
    }
    if let Err(e) = config.operator() {
        out.push(e.to_string());
    }
    let needs_set = !matches!(kind, Some(Experiment::Isospectrality | Experiment::MMatrixFlow));
    if config.gap_set.is_some() || needs_set {
        if let Err(e) = config.gap_set() {
            out.push(e.to_string());
        }
    }
    if matches!(
        kind,
        Some(
            Experiment::Isospectrality | Experiment::MMatrixFlow | Experiment::DubrovinVsDirect | Experiment::AppendixA
        )
    ) && config.operator.is_none()
    {
        out.push(format!("experiment '{}' needs an `operator`", config.experiment));
    }
    if let (Some(angles), Ok(set)) = (&config.params.initial_angles, config.gap_set()) {
        if angles.len() != set.len() {
            out.push(format!(
                "initial_angles has {} entries but the gap set has {} gaps",
                angles.len(),
                set.len()
            ));
        }
    }
    out
}
