//! Optional TOML configuration. Every key mirrors a command-line flag
//! (dashes become underscores); flags win over the file.

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Deserialize;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub r: Option<f64>,
    pub nth: Option<f64>,
    pub temp_kelvin: Option<f64>,
    pub omega_m: Option<f64>,
    pub subsystems: Option<String>,
    pub measures: Option<String>,
    pub grid: Option<usize>,
    /// `"log"` or `"linear"`.
    pub spacing: Option<String>,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub sequential: Option<bool>,
    pub vary: Option<String>,
    pub from: Option<f64>,
    pub to: Option<f64>,
    pub trials: Option<usize>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }
}
