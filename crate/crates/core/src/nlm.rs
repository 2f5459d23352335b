//! One-dimensional nonlocal means: each sample becomes a weighted mean of the
//! samples in its search window, weighted by the flat (unweighted) squared
//! distance between their neighborhoods.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::signal_model::Signal;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NlmParams {
    /// Neighborhood spans `2 * patch_half_width + 1` samples.
    pub patch_half_width: usize,
    /// Search window is `i ± search_half_width`.
    pub search_half_width: usize,
    /// Bandwidth `mu`.
    pub mu: f64,
    /// Replace the self weight by the largest weight among the other candidates.
    pub exclude_center: bool,
}

impl NlmParams {
    pub const DEFAULT_PATCH_HALF_WIDTH: usize = 10;
    pub const DEFAULT_SEARCH_HALF_WIDTH: usize = 1000;
    pub const DEFAULT_MU_FACTOR: f64 = 1.5;

    /// Configuration defaults (not tuned values): patch 10, search 1000, `mu = 1.5 sigma`.
    pub fn for_sigma(sigma: f64) -> Self {
        Self {
            patch_half_width: Self::DEFAULT_PATCH_HALF_WIDTH,
            search_half_width: Self::DEFAULT_SEARCH_HALF_WIDTH,
            mu: Self::DEFAULT_MU_FACTOR * sigma,
            exclude_center: false,
        }
    }

    /// Number of samples in a full neighborhood.
    pub fn patch_len(&self) -> usize {
        2 * self.patch_half_width + 1
    }

    pub fn validate(&self) -> Result<()> {
        if self.patch_half_width == 0 {
            return Err(Error::InvalidParameter { name: "patch_half_width", reason: "must be >= 1" });
        }
        if self.search_half_width == 0 {
            return Err(Error::InvalidParameter { name: "search_half_width", reason: "must be >= 1" });
        }
        if !(self.mu.is_finite() && self.mu > 0.0) {
            return Err(Error::InvalidParameter { name: "mu", reason: "bandwidth must be finite and > 0" });
        }
        Ok(())
    }
}

/// Flat squared distance over the offsets where both neighborhoods exist, and
/// the number of such offsets.
#[inline]
fn patch_distance(v: &[f64], i: usize, j: usize, h: usize) -> (f64, usize) {
    let n = v.len();
    let back = h.min(i).min(j);
    let fwd = h.min(n - 1 - i).min(n - 1 - j);
    let a = &v[i - back..=i + fwd];
    let b = &v[j - back..=j + fwd];
    let d2 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum();
    (d2, back + fwd + 1)
}

/// `exp(-d^2(v[i], v[j]) / (2 L_delta mu^2))` with full neighborhoods.
pub fn nlm_weight(v: &[f64], i: usize, j: usize, params: &NlmParams) -> Result<f64> {
    let h = params.patch_half_width;
    let n = v.len();
    for idx in [i, j] {
        if idx < h || idx + h >= n {
            return Err(Error::OutOfBounds { index: idx, len: n });
        }
    }
    let (d2, len) = patch_distance(v, i, j, h);
    Ok(libm::exp(-d2 / (2.0 * len as f64 * params.mu * params.mu)))
}

fn estimate(v: &[f64], i: usize, params: &NlmParams) -> f64 {
    let n = v.len();
    let h = params.patch_half_width;
    let lo = i.saturating_sub(params.search_half_width);
    let hi = (i + params.search_half_width).min(n - 1);
    let denom = 2.0 * params.mu * params.mu;
    let mut sum = 0.0;
    let mut norm = 0.0;
    let mut max_other: f64 = 0.0;
    for j in lo..=hi {
        if j == i {
            continue;
        }
        let (d2, len) = patch_distance(v, i, j, h);
        let w = libm::exp(-d2 / (denom * len as f64));
        max_other = max_other.max(w);
        sum += w * (v[j] - v[i]);
        norm += w;
    }
    let self_w = if params.exclude_center {
        if max_other > 0.0 { max_other } else { 1.0 }
    } else {
        1.0
    };
    // centered on v[i] so a constant neighborhood is reproduced exactly
    v[i] + sum / (norm + self_w)
}

/// NLM estimate of every sample. Near the edges the search window and the
/// neighborhoods are clamped to the signal.
pub fn denoise_nlm_samples(noisy: &[f64], params: &NlmParams) -> Result<Vec<f64>> {
    params.validate()?;
    let min = 2 * (params.patch_half_width + params.search_half_width) + 1;
    if noisy.len() < min {
        return Err(Error::SignalTooShort { len: noisy.len(), min });
    }
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        Ok((0..noisy.len()).into_par_iter().map(|i| estimate(noisy, i, params)).collect())
    }
    #[cfg(not(feature = "parallel"))]
    Ok((0..noisy.len()).map(|i| estimate(noisy, i, params)).collect())
}

pub fn denoise_nlm(noisy: &Signal, params: &NlmParams) -> Result<Signal> {
    let out = denoise_nlm_samples(noisy.samples(), params)?;
    noisy.with_samples(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal_model::GaussianNoise;
    use alloc::vec;
    use core::f64::consts::PI;

    fn small(mu: f64) -> NlmParams {
        NlmParams { patch_half_width: 2, search_half_width: 10, mu, exclude_center: false }
    }

    #[test]
    fn self_weight_is_one() {
        let v: Vec<f64> = GaussianNoise::new(1).take(50).collect();
        assert_eq!(nlm_weight(&v, 20, 20, &small(0.3)).unwrap(), 1.0);
    }

    #[test]
    fn unit_exponent() {
        // patches differ by 1 in the centre sample only: d^2 = 1
        let mut v = vec![0.0; 20];
        v[5] = 1.0;
        let p = NlmParams { mu: libm::sqrt(1.0 / (2.0 * 5.0)), ..small(1.0) };
        let w = nlm_weight(&v, 5, 14, &p).unwrap();
        assert!((w - libm::exp(-1.0)).abs() < 1e-15);
    }

    #[test]
    fn flat_kernel_and_symmetry() {
        let v: Vec<f64> = GaussianNoise::new(2).take(60).collect();
        let p = small(0.7);
        let (i, j) = (10, 33);
        let d2: f64 = (0..5).map(|k| (v[i - 2 + k] - v[j - 2 + k]).powi(2)).sum();
        let expected = libm::exp(-d2 / (2.0 * 5.0 * 0.49));
        assert!((nlm_weight(&v, i, j, &p).unwrap() - expected).abs() < 1e-15);
        assert_eq!(nlm_weight(&v, i, j, &p).unwrap(), nlm_weight(&v, j, i, &p).unwrap());
        assert!(matches!(nlm_weight(&v, 1, 30, &p), Err(Error::OutOfBounds { index: 1, .. })));
    }

    #[test]
    fn constant_fixed_point() {
        let v = vec![0.625; 100];
        assert_eq!(denoise_nlm_samples(&v, &small(0.1)).unwrap(), v);
        let ex = NlmParams { exclude_center: true, ..small(0.1) };
        assert_eq!(denoise_nlm_samples(&v, &ex).unwrap(), v);
    }

    #[test]
    fn convex_combination() {
        let v: Vec<f64> = GaussianNoise::new(3).take(300).collect();
        for exclude_center in [false, true] {
            let p = NlmParams { exclude_center, ..small(0.5) };
            let out = denoise_nlm_samples(&v, &p).unwrap();
            for (i, u) in out.iter().enumerate() {
                let w = &v[i.saturating_sub(10)..=(i + 10).min(299)];
                let lo = w.iter().copied().fold(f64::INFINITY, f64::min);
                let hi = w.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                assert!(lo <= *u && *u <= hi);
            }
        }
    }

    #[test]
    fn periodic_signal_is_averaged() {
        let period = 40;
        let clean: Vec<f64> = (0..2000).map(|i| libm::sin(2.0 * PI * i as f64 / period as f64)).collect();
        let sigma = 0.1;
        let noisy: Vec<f64> = clean.iter().zip(GaussianNoise::new(4)).map(|(c, z)| c + sigma * z).collect();
        let p = NlmParams { patch_half_width: 5, search_half_width: 200, mu: 1.5 * sigma, exclude_center: false };
        let out = denoise_nlm_samples(&noisy, &p).unwrap();
        let err_in: f64 = clean.iter().zip(&noisy).map(|(a, b)| (a - b).powi(2)).sum();
        let err_out: f64 = clean.iter().zip(&out).map(|(a, b)| (a - b).powi(2)).sum();
        assert!(err_out < 0.5 * err_in, "{err_out} vs {err_in}");
    }

    #[test]
    fn too_short() {
        assert!(matches!(
            denoise_nlm_samples(&[0.0; 24], &small(0.1)),
            Err(Error::SignalTooShort { len: 24, min: 25 })
        ));
        assert!(denoise_nlm_samples(&[0.0; 25], &small(0.1)).is_ok());
    }
}
