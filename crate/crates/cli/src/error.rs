use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum LabError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },

    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },

    #[error("malformed config: {0}")]
    Json(#[from] serde_json::Error),

    #[error("unknown experiment '{0}'; expected one of: {list}", list = crate::config::EXPERIMENTS.join(", "))]
    UnknownExperiment(String),

    #[error("unknown preset '{0}'; run `toda-lab list-presets`")]
    UnknownPreset(String),

    #[error("invalid config: {0}")]
    Config(String),

    #[error(transparent)]
    Core(#[from] toda_core::Error),
}

pub type Result<T> = std::result::Result<T, LabError>;
