//! Run configuration, read from a single JSON document.

use std::path::{Path, PathBuf};

use classdiv_core::family::{build_system, paper_boxes, Strategy};
use classdiv_core::{BoxParameters, CongruenceSystem};
use serde::Deserialize;

use crate::error::CliError;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub l: u32,
    pub primes: Vec<u64>,
    pub a: Vec<i64>,
    pub b: Vec<i64>,
    #[serde(rename = "X", default)]
    pub x: Option<f64>,
    #[serde(rename = "X_values", default)]
    pub x_values: Option<Vec<f64>>,
    #[serde(default = "default_true")]
    pub enforce_t_range: bool,
    #[serde(default)]
    pub d_cap: Option<u64>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_workers")]
    pub workers: usize,
    #[serde(default)]
    pub output: Option<PathBuf>,
    /// Explicit `m`/`n` boxes. When absent the boxes are derived from `X`.
    #[serde(default)]
    pub boxes: Option<DeskBoxes>,
    #[serde(default)]
    pub strategy: Option<StrategyName>,
}

/// `m` in `(m_lo, m_hi]`, `n` in `(n_lo, n_hi]`; a missing `n_hi` leaves `n`
/// bounded only by `n^2 < m^3`.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeskBoxes {
    pub m_lo: f64,
    pub m_hi: f64,
    #[serde(default)]
    pub n_lo: f64,
    #[serde(default)]
    pub n_hi: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StrategyName {
    PairScan,
    NormForm,
}

impl From<StrategyName> for Strategy {
    fn from(s: StrategyName) -> Self {
        match s {
            StrategyName::PairScan => Strategy::PairScan,
            StrategyName::NormForm => Strategy::NormForm,
        }
    }
}

fn default_true() -> bool {
    true
}

fn default_workers() -> usize {
    1
}

impl Config {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn from_path(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn system(&self) -> Result<CongruenceSystem, CliError> {
        Ok(build_system(self.l, &self.primes, &self.a, &self.b)?)
    }

    /// The single `X` for `generate`: `X`, or the largest of `X_values`.
    pub fn single_x(&self) -> Result<f64, CliError> {
        match (self.x, &self.x_values) {
            (Some(x), _) => Ok(x),
            (None, Some(v)) => v
                .iter()
                .copied()
                .reduce(f64::max)
                .ok_or_else(|| CliError::Config("X_values: empty list".into())),
            (None, None) => Err(CliError::Config("missing field `X` (or `X_values`)".into())),
        }
    }

    /// The sweep for `count`: `X_values`, or `[X]`.
    pub fn sweep(&self) -> Result<Vec<f64>, CliError> {
        let v = match (&self.x_values, self.x) {
            (Some(v), _) => v.clone(),
            (None, Some(x)) => vec![x],
            (None, None) => return Err(CliError::Config("missing field `X_values` (or `X`)".into())),
        };
        if v.is_empty() {
            return Err(CliError::Config("X_values: empty list".into()));
        }
        if v.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(CliError::Config("X_values: must be strictly ascending".into()));
        }
        Ok(v)
    }

    pub fn boxes_for(&self, x: f64) -> Result<BoxParameters, CliError> {
        let b = match self.boxes {
            Some(b) => {
                BoxParameters::desk(x, (b.m_lo, b.m_hi), (b.n_lo, b.n_hi.unwrap_or(f64::INFINITY)))?.with_t_range(false)
            }
            None => paper_boxes(x)?.with_t_range(self.enforce_t_range),
        };
        Ok(b)
    }
}
