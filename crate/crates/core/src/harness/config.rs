//! Run configuration, loaded from JSON and overridden by CLI flags.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::models::ExpClassParams;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    /// Allowed negative slack, relative to `max(1, bound)` or in log units.
    pub slack: f64,
    /// Relative tolerance for identities and Weyl-type inequalities.
    pub rel: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { slack: 1e-8, rel: 1e-8 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Config {
    pub seed: u64,
    /// Random pairs per dimension (and per perturbation size).
    pub trials: usize,
    pub dims: Vec<usize>,
    pub delta_grid: Vec<f64>,
    pub epsilon_grid: Vec<f64>,
    pub n_shift: usize,
    pub exp_class: ExpClassParams,
    pub tol: Tolerances,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            seed: 42,
            trials: 1000,
            dims: (2..=10).collect(),
            delta_grid: vec![1e-1, 1e-3],
            epsilon_grid: vec![1e-2, 1e-3, 1e-4, 1e-5, 1e-6],
            n_shift: 6,
            exp_class: ExpClassParams { a: 1.0, alpha: 1.0, m: 1.0 },
            tol: Tolerances::default(),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed config: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid config: {0}")]
    Invalid(String),
}

impl Config {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        if !value.is_object() {
            return Err(ConfigError::Invalid("config must be a JSON object".into()));
        }
        let cfg: Self = serde_json::from_value(value)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let bad = |m: String| Err(ConfigError::Invalid(m));
        if self.dims.contains(&0) {
            return bad("dims must be >= 1".into());
        }
        if self.delta_grid.iter().any(|d| !(d.is_finite() && *d >= 0.0)) {
            return bad("delta_grid entries must be finite and >= 0".into());
        }
        if self.epsilon_grid.iter().any(|e| !(*e > 0.0 && *e < 1.0)) {
            return bad("epsilon_grid entries must lie in (0, 1)".into());
        }
        if self.n_shift < 2 {
            return bad(format!("n_shift must be >= 2, got {}", self.n_shift));
        }
        if let Err(e) = self.exp_class.validate() {
            return bad(e.to_string());
        }
        for (name, v) in [("tol.slack", self.tol.slack), ("tol.rel", self.tol.rel)] {
            if !(v > 0.0 && v.is_finite()) {
                return bad(format!("{name} must be positive, got {v}"));
            }
        }
        Ok(())
    }
}

/// Parse a `a..b` (inclusive) dimension range, or a single dimension.
pub fn parse_dims(s: &str) -> Result<Vec<usize>, ConfigError> {
    let err = || ConfigError::Invalid(format!("bad dimension range {s:?}, expected a..b"));
    let dims = match s.split_once("..") {
        Some((a, b)) => {
            let a: usize = a.trim().parse().map_err(|_| err())?;
            let b: usize = b.trim_start_matches('=').trim().parse().map_err(|_| err())?;
            if a == 0 || a > b {
                return Err(err());
            }
            (a..=b).collect()
        }
        None => vec![s.trim().parse().map_err(|_| err())?],
    };
    Ok(dims)
}
