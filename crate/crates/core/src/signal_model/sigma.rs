use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::wavelet::{dwt1_forward, WaveletFilter};

/// Median absolute deviation of the finest detail coefficients, `median(|d|) / 0.6745`.
pub fn estimate_sigma(noisy: &[f64], wavelet: &WaveletFilter) -> Result<f64> {
    if noisy.len() < 4 {
        return Err(Error::SignalTooShort { len: noisy.len(), min: 4 });
    }
    let coeffs = dwt1_forward(noisy, wavelet, 1)?;
    let mut mags: Vec<f64> = coeffs.details[0].iter().map(|d| libm::fabs(*d)).collect();
    mags.sort_by(f64::total_cmp);
    let n = mags.len();
    let median = if n % 2 == 1 { mags[n / 2] } else { 0.5 * (mags[n / 2 - 1] + mags[n / 2]) };
    Ok(median / 0.6745)
}
