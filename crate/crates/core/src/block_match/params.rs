use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::wavelet::WaveletName;

/// Feature space used for block similarity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum ProjectorKind {
    /// Principal components of the blocks in the search window, refit per reference.
    #[default]
    Pca,
    /// Leading rows of the orthonormal DCT-II basis; window independent.
    Dct,
}

impl fmt::Display for ProjectorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProjectorKind::Pca => "pca",
            ProjectorKind::Dct => "dct",
        })
    }
}

impl FromStr for ProjectorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "pca" => Ok(ProjectorKind::Pca),
            "dct" => Ok(ProjectorKind::Dct),
            _ => Err(Error::InvalidParameter { name: "projector", reason: "expected pca or dct" }),
        }
    }
}

/// How the hard threshold multiplier is chosen for each SDM.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum ThresholdPolicy {
    /// `lambda = c * sigma` with the configured `c` for every SDM.
    #[default]
    Fixed,
    /// `lambda = sqrt(2 ln N_i) * sigma`, `N_i` the SDM's coefficient count.
    Visu,
}

impl fmt::Display for ThresholdPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ThresholdPolicy::Fixed => "fixed",
            ThresholdPolicy::Visu => "visu",
        })
    }
}

impl FromStr for ThresholdPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "fixed" => Ok(ThresholdPolicy::Fixed),
            "visu" | "visushrink" => Ok(ThresholdPolicy::Visu),
            _ => Err(Error::InvalidParameter { name: "threshold_policy", reason: "expected fixed or visu" }),
        }
    }
}

/// NLWT tunables. Defaults are the values tuned for ~360 Hz records
/// normalized to unit peak: `L = 10`, `M = 1000`, `m = 2(2L+1)`, `tau = 1.2`,
/// `k = L`, `c = 3.8`, Haar, five principal components.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default))]
pub struct NlwtParams {
    /// `L`: blocks span `2L + 1` samples.
    #[cfg_attr(feature = "serde", serde(rename = "L"))]
    pub block_half_width: usize,
    /// `M`: candidates are searched within `reference ± M`.
    #[cfg_attr(feature = "serde", serde(rename = "M"))]
    pub search_half_width: usize,
    /// `m`: maximum number of blocks in an SDM, reference included.
    #[cfg_attr(feature = "serde", serde(rename = "m"))]
    pub max_blocks: usize,
    /// `tau`: maximum projected squared distance for a candidate to match.
    #[cfg_attr(feature = "serde", serde(rename = "tau"))]
    pub match_threshold: f64,
    /// `k`: step between successive reference centers.
    #[cfg_attr(feature = "serde", serde(rename = "k"))]
    pub shift: usize,
    /// `c`: hard threshold multiplier, `lambda = c * sigma`.
    #[cfg_attr(feature = "serde", serde(rename = "c"))]
    pub shrink_coeff: f64,
    pub threshold_policy: ThresholdPolicy,
    pub wavelet: WaveletName,
    pub projector: ProjectorKind,
    pub n_components: usize,
    /// Decomposition depth; `None` uses `min(3, floor(log2(min(rows, cols))))` per SDM.
    pub levels: Option<usize>,
    /// Reuse one PCA projector for this many consecutive references.
    pub refit_every: usize,
}

impl Default for NlwtParams {
    fn default() -> Self {
        Self::with_block_half_width(10)
    }
}

impl NlwtParams {
    /// Defaults with `L` replaced and `m = 2(2L+1)`, `k = L` following it.
    pub fn with_block_half_width(l: usize) -> Self {
        Self {
            block_half_width: l,
            search_half_width: 1000,
            max_blocks: 2 * (2 * l + 1),
            match_threshold: 1.2,
            shift: l.max(1),
            shrink_coeff: 3.8,
            threshold_policy: ThresholdPolicy::Fixed,
            wavelet: WaveletName::Haar,
            projector: ProjectorKind::Pca,
            n_components: 5,
            levels: None,
            refit_every: 1,
        }
    }

    /// Defaults for a sampling rate: the 360 Hz tuning below 700 Hz, otherwise
    /// the 1 kHz tuning (`L = 20`, `M = 4000`, `tau = 1.8`).
    pub fn for_sample_rate(sample_rate_hz: f64) -> Self {
        if sample_rate_hz < 700.0 {
            Self::default()
        } else {
            Self {
                search_half_width: 4000,
                match_threshold: 1.8,
                ..Self::with_block_half_width(20)
            }
        }
    }

    pub fn block_len(&self) -> usize {
        2 * self.block_half_width + 1
    }

    pub fn validate(&self) -> Result<()> {
        let invalid = |name, reason| Err(Error::InvalidParameter { name, reason });
        if self.block_half_width == 0 {
            return invalid("L", "block half-width must be >= 1 (tuning range 0.01*fs to 0.1*fs samples)");
        }
        if self.search_half_width == 0 {
            return invalid("M", "search half-width must be >= 1 (tuning range 3-5 heart beats)");
        }
        if self.max_blocks == 0 {
            return invalid("m", "maximum blocks per SDM must be >= 1 (default 2(2L+1))");
        }
        if !(self.match_threshold.is_finite() && self.match_threshold > 0.0) {
            return invalid("tau", "matching threshold must be > 0 (tuning range 1-5% of 2(2L+1))");
        }
        if self.shift == 0 || self.shift >= self.block_len() {
            return invalid("k", "shift must satisfy 0 < k < 2L+1");
        }
        if !(self.shrink_coeff.is_finite() && self.shrink_coeff > 0.0) {
            return invalid("c", "shrink coefficient must be > 0 (tuning range ±25% of 2*sqrt(log(2L+1)))");
        }
        if self.n_components == 0 || self.n_components > self.block_len() {
            return invalid("n_components", "must satisfy 1 <= n_components <= 2L+1");
        }
        if self.levels == Some(0) {
            return invalid("levels", "must be >= 1");
        }
        if self.refit_every == 0 {
            return invalid("refit_every", "must be >= 1");
        }
        Ok(())
    }
}
