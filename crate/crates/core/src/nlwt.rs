//! The NLWT denoiser: SDM extraction, 2-D wavelet hard shrinkage of each SDM
//! and inverse-variance weighted aggregation of the overlapping estimates.

use alloc::vec;
use alloc::vec::Vec;

use crate::block_match::{
    extract_sdm_with, fit_projector, reference_schedule, FeatureProjector, NlwtParams, Sdm,
    ThresholdPolicy,
};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::signal_model::Signal;
use crate::wavelet::{
    default_levels, dwt2_forward, dwt2_inverse, dwt2_max_levels, hard_threshold_in_place,
    WaveletFilter,
};

/// A denoised SDM together with its aggregation weight.
#[derive(Debug, Clone, PartialEq)]
pub struct ShrunkSdm {
    pub matrix: Matrix,
    /// Nonzero coefficients left after thresholding, LL included.
    pub retained: usize,
    /// `1 / (max(retained, 1) * sigma^2)`.
    pub omega: f64,
    pub locations: Vec<usize>,
}

/// VisuShrink multiplier `sqrt(2 ln n)` for `n` coefficients.
pub fn visu_coeff(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidParameter { name: "N_i", reason: "VisuShrink needs at least 2 coefficients" });
    }
    Ok(libm::sqrt(2.0 * libm::log(n as f64)))
}

/// Forward 2-D DWT, hard threshold at `lambda`, inverse. Returns the
/// reconstruction and the retained-coefficient count.
pub fn shrink_matrix(m: &Matrix, filter: &WaveletFilter, levels: usize, lambda: f64) -> Result<(Matrix, usize)> {
    let mut coeffs = dwt2_forward(m, filter, levels)?;
    let retained = hard_threshold_in_place(&mut coeffs, lambda);
    Ok((dwt2_inverse(&coeffs, filter)?, retained))
}

/// Decomposition depth used for an SDM of the given shape. An explicit depth
/// deeper than the shape allows is clamped.
pub fn sdm_levels(params: &NlwtParams, rows: usize, cols: usize) -> usize {
    match params.levels {
        Some(l) => l.min(dwt2_max_levels(rows, cols)),
        None => default_levels(rows, cols),
    }
}

/// Denoises one SDM with `lambda = c * sigma`.
pub fn shrink_sdm(sdm: &Sdm, sigma: f64, params: &NlwtParams) -> Result<ShrunkSdm> {
    let filter = WaveletFilter::new(params.wavelet);
    shrink_sdm_with(sdm, sigma, params, &filter)
}

fn shrink_sdm_with(sdm: &Sdm, sigma: f64, params: &NlwtParams, filter: &WaveletFilter) -> Result<ShrunkSdm> {
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(Error::InvalidParameter { name: "sigma", reason: "must be finite and > 0" });
    }
    let (rows, cols) = sdm.matrix.shape();
    let levels = sdm_levels(params, rows, cols);
    let mut coeffs = dwt2_forward(&sdm.matrix, filter, levels)?;
    let c = match params.threshold_policy {
        ThresholdPolicy::Fixed => params.shrink_coeff,
        ThresholdPolicy::Visu => visu_coeff(coeffs.coefficient_count())?,
    };
    let retained = hard_threshold_in_place(&mut coeffs, c * sigma);
    let matrix = dwt2_inverse(&coeffs, filter)?;
    // an all-zero SDM retains nothing; it is weighted as if one coefficient survived
    let omega = 1.0 / (retained.max(1) as f64 * sigma * sigma);
    Ok(ShrunkSdm { matrix, retained, omega, locations: sdm.locations.clone() })
}

/// Per-sample weighted sums of estimates and of their weights.
#[derive(Debug, Clone, PartialEq)]
pub struct Aggregator {
    weighted: Vec<f64>,
    weights: Vec<f64>,
}

impl Aggregator {
    pub fn new(n: usize) -> Self {
        Self { weighted: vec![0.0; n], weights: vec![0.0; n] }
    }

    /// Adds every column of `shrunk` at its source location. Samples repeated
    /// across (or within) columns each count as a separate estimate.
    pub fn add(&mut self, shrunk: &ShrunkSdm) -> Result<()> {
        let rows = shrunk.matrix.rows();
        let half = rows / 2;
        let n = self.weights.len();
        for (c, &center) in shrunk.locations.iter().enumerate() {
            if center < half || center + half >= n {
                return Err(Error::OutOfBounds { index: center, len: n });
            }
            let start = center - half;
            for r in 0..rows {
                self.weighted[start + r] += shrunk.omega * shrunk.matrix.get(r, c);
                self.weights[start + r] += shrunk.omega;
            }
        }
        Ok(())
    }

    pub fn finish(self) -> Result<Vec<f64>> {
        if let Some(index) = self.weights.iter().position(|&w| w <= 0.0) {
            return Err(Error::UncoveredSample { index });
        }
        Ok(self.weighted.iter().zip(&self.weights).map(|(s, w)| s / w).collect())
    }
}

/// Weighted average of all block estimates, in the order given.
pub fn aggregate(shrunk: &[ShrunkSdm], n: usize) -> Result<Vec<f64>> {
    let mut agg = Aggregator::new(n);
    for s in shrunk {
        agg.add(s)?;
    }
    agg.finish()
}

/// Full NLWT denoiser on raw samples. See [`denoise_nlwt`].
pub fn denoise_nlwt_samples(noisy: &[f64], sigma: f64, params: &NlwtParams) -> Result<Vec<f64>> {
    params.validate()?;
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(Error::InvalidParameter { name: "sigma", reason: "must be finite and > 0" });
    }
    let n = noisy.len();
    let schedule = reference_schedule(n, params.block_half_width, params.shift)?;
    let filter = WaveletFilter::new(params.wavelet);

    let run_chunk = |chunk: &[usize]| -> Result<Vec<ShrunkSdm>> {
        let proj = match fit_projector(noisy, chunk[0], params) {
            Ok(p) => p,
            Err(Error::DegenerateWindow { .. }) => {
                FeatureProjector::dct(params.block_len(), params.n_components)
            }
            Err(e) => return Err(e),
        };
        chunk
            .iter()
            .map(|&c| {
                let sdm = extract_sdm_with(noisy, c, params, &proj)?;
                shrink_sdm_with(&sdm, sigma, params, &filter)
            })
            .collect()
    };

    let chunks = schedule.centers.chunks(params.refit_every);
    let mut agg = Aggregator::new(n);

    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        let chunks: Vec<&[usize]> = chunks.collect();
        let results: Vec<Vec<ShrunkSdm>> = chunks.par_iter().map(|c| run_chunk(c)).collect::<Result<_>>()?;
        // merge in ascending reference order regardless of completion order
        for s in results.iter().flatten() {
            agg.add(s)?;
        }
    }
    #[cfg(not(feature = "parallel"))]
    for chunk in chunks {
        for s in run_chunk(chunk)? {
            agg.add(&s)?;
        }
    }
    agg.finish()
}

/// Denoises `noisy` given the noise standard deviation `sigma`.
///
/// Reference blocks are placed every `k` samples (plus a tail block), each gets
/// an SDM of up to `m` similar blocks, the SDM is hard-thresholded in the 2-D
/// wavelet domain at `c * sigma`, and all block estimates are averaged back
/// with weights `1 / (N_retained * sigma^2)`. Output is deterministic and
/// independent of the `parallel` feature.
pub fn denoise_nlwt(noisy: &Signal, sigma: f64, params: &NlwtParams) -> Result<Signal> {
    let out = denoise_nlwt_samples(noisy.samples(), sigma, params)?;
    noisy.with_samples(out)
}
