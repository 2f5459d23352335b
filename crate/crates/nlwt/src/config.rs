//! JSON configuration file shared by all subcommands. Keys mirror the
//! command-line flags; NLWT keys use the `L`, `M`, `m`, `tau`, `k`, `c`
//! notation. Layering is defaults < config file < flags.

use std::fs;
use std::path::{Path, PathBuf};

use nlwt_core::Method;
use serde::{Deserialize, Serialize};

use crate::bench::SynthSpec;
use crate::error::{Error, Result};
use crate::params::{NlmOverrides, NlwtOverrides};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany {
    One(f64),
    Many(Vec<f64>),
}

impl OneOrMany {
    pub fn to_vec(&self) -> Vec<f64> {
        match self {
            OneOrMany::One(v) => vec![*v],
            OneOrMany::Many(v) => v.clone(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct FileConfig {
    pub input: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub method: Option<Method>,
    pub methods: Option<Vec<Method>>,
    pub sigma: Option<f64>,
    pub estimate_sigma: Option<bool>,
    pub snr: Option<OneOrMany>,
    pub seed: Option<u64>,
    pub realizations: Option<usize>,
    pub workers: Option<usize>,
    pub format: Option<String>,
    pub fs: Option<f64>,
    pub records: Option<Vec<PathBuf>>,
    pub synth: Option<SynthSpec>,
    pub timing: Option<bool>,
    #[serde(flatten)]
    pub nlwt: NlwtOverrides,
    #[serde(flatten)]
    pub nlm: NlmOverrides,
}

const KNOWN_KEYS: &[&str] = &[
    "input", "output", "method", "methods", "sigma", "estimate_sigma", "snr", "seed", "realizations",
    "workers", "format", "fs", "records", "synth", "timing", "L", "M", "m", "tau", "k", "c",
    "wavelet", "projector", "n_components", "levels", "refit_every", "threshold_policy",
    "patch_half_width", "search_half_width", "mu", "mu_factor", "exclude_center",
];

impl FileConfig {
    /// Parses a config document. Unknown keys are rejected so that a typo
    /// cannot silently fall back to a default.
    pub fn parse(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        let obj = value.as_object().ok_or_else(|| Error::Config("config must be a JSON object".into()))?;
        if let Some(key) = obj.keys().find(|k| !KNOWN_KEYS.contains(&k.as_str())) {
            return Err(Error::Config(format!("unknown config key `{key}`")));
        }
        Ok(serde_json::from_value(value)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }
}
