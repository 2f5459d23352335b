//! Partial parameter sets that layer over the sample-rate dependent defaults.
//! Field names follow the usual notation (`L`, `M`, `m`, `tau`, `k`, `c`).

use nlwt_core::{NlmParams, NlwtParams, ProjectorKind, ThresholdPolicy, WaveletName};
use serde::{Deserialize, Serialize};

#[allow(non_snake_case)]
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct NlwtOverrides {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub L: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub M: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wavelet: Option<WaveletName>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub projector: Option<ProjectorKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_components: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub levels: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub refit_every: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold_policy: Option<ThresholdPolicy>,
}

impl NlwtOverrides {
    /// Fields set in `top` win over fields set in `self`.
    pub fn layered(&self, top: &NlwtOverrides) -> NlwtOverrides {
        NlwtOverrides {
            L: top.L.or(self.L),
            M: top.M.or(self.M),
            m: top.m.or(self.m),
            tau: top.tau.or(self.tau),
            k: top.k.or(self.k),
            c: top.c.or(self.c),
            wavelet: top.wavelet.or(self.wavelet),
            projector: top.projector.or(self.projector),
            n_components: top.n_components.or(self.n_components),
            levels: top.levels.or(self.levels),
            refit_every: top.refit_every.or(self.refit_every),
            threshold_policy: top.threshold_policy.or(self.threshold_policy),
        }
    }

    /// Applies the overrides to the defaults for `sample_rate_hz`. Setting `L`
    /// alone also moves the derived defaults `m = 2(2L+1)` and `k = L`.
    pub fn resolve(&self, sample_rate_hz: f64) -> NlwtParams {
        let mut p = NlwtParams::for_sample_rate(sample_rate_hz);
        if let Some(l) = self.L {
            let derived = NlwtParams::with_block_half_width(l);
            p.block_half_width = l;
            p.max_blocks = derived.max_blocks;
            p.shift = derived.shift;
        }
        if let Some(v) = self.M {
            p.search_half_width = v;
        }
        if let Some(v) = self.m {
            p.max_blocks = v;
        }
        if let Some(v) = self.tau {
            p.match_threshold = v;
        }
        if let Some(v) = self.k {
            p.shift = v;
        }
        if let Some(v) = self.c {
            p.shrink_coeff = v;
        }
        if let Some(v) = self.wavelet {
            p.wavelet = v;
        }
        if let Some(v) = self.projector {
            p.projector = v;
        }
        if let Some(v) = self.n_components {
            p.n_components = v;
        }
        if self.levels.is_some() {
            p.levels = self.levels;
        }
        if let Some(v) = self.refit_every {
            p.refit_every = v;
        }
        if let Some(v) = self.threshold_policy {
            p.threshold_policy = v;
        }
        p
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct NlmOverrides {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub patch_half_width: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub search_half_width: Option<usize>,
    /// Absolute bandwidth; wins over `mu_factor`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
    /// Bandwidth as a multiple of sigma (default 1.5).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu_factor: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exclude_center: Option<bool>,
}

impl NlmOverrides {
    pub fn layered(&self, top: &NlmOverrides) -> NlmOverrides {
        NlmOverrides {
            patch_half_width: top.patch_half_width.or(self.patch_half_width),
            search_half_width: top.search_half_width.or(self.search_half_width),
            mu: top.mu.or(self.mu),
            mu_factor: top.mu_factor.or(self.mu_factor),
            exclude_center: top.exclude_center.or(self.exclude_center),
        }
    }

    pub fn resolve(&self, sigma: f64) -> NlmParams {
        let mut p = NlmParams::for_sigma(sigma);
        if let Some(f) = self.mu_factor {
            p.mu = f * sigma;
        }
        if let Some(mu) = self.mu {
            p.mu = mu;
        }
        if let Some(v) = self.patch_half_width {
            p.patch_half_width = v;
        }
        if let Some(v) = self.search_half_width {
            p.search_half_width = v;
        }
        if let Some(v) = self.exclude_center {
            p.exclude_center = v;
        }
        p
    }
}
