use alloc::vec::Vec;
use core::f64::consts::PI;

use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};

use super::{power, Signal};
use crate::error::{Error, Result};

/// Deterministic standard-normal stream.
///
/// Uniforms come from ChaCha20 seeded with `SeedableRng::seed_from_u64(seed)`;
/// each pair of 64-bit words `(a, b)` is mapped to
/// `u1 = ((a >> 11) + 1) / 2^53` in (0, 1] and `u2 = (b >> 11) / 2^53` in [0, 1),
/// then Box-Muller yields `r cos(2 pi u2)` followed by `r sin(2 pi u2)` with
/// `r = sqrt(-2 ln u1)`. Transcendentals go through `libm`, so the stream is
/// bit-identical on every platform.
#[derive(Debug, Clone)]
pub struct GaussianNoise {
    rng: ChaCha20Rng,
    spare: Option<f64>,
}

impl GaussianNoise {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha20Rng::seed_from_u64(seed), spare: None }
    }
}

const INV_2_53: f64 = 1.0 / (1u64 << 53) as f64;

impl Iterator for GaussianNoise {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        if let Some(z) = self.spare.take() {
            return Some(z);
        }
        let a = self.rng.next_u64();
        let b = self.rng.next_u64();
        let u1 = ((a >> 11) + 1) as f64 * INV_2_53;
        let u2 = (b >> 11) as f64 * INV_2_53;
        let r = libm::sqrt(-2.0 * libm::log(u1));
        let theta = 2.0 * PI * u2;
        self.spare = Some(r * libm::sin(theta));
        Some(r * libm::cos(theta))
    }
}

/// Target SNR and seed of one noise realization.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NoiseSpec {
    pub target_snr_db: f64,
    pub seed: u64,
}

impl NoiseSpec {
    pub fn new(target_snr_db: f64, seed: u64) -> Self {
        Self { target_snr_db, seed }
    }

    /// `sigma = sqrt(P / 10^(snr/10))` from the exact signal power `P`.
    pub fn sigma_for(&self, signal: &[f64]) -> Result<f64> {
        let p = power(signal);
        if p == 0.0 {
            return Err(Error::AllZeroSignal);
        }
        if !self.target_snr_db.is_finite() {
            return Err(Error::InvalidParameter { name: "snr_db", reason: "must be finite" });
        }
        Ok(libm::sqrt(p / libm::pow(10.0, self.target_snr_db / 10.0)))
    }
}

/// Adds zero-mean white Gaussian noise whose variance is set analytically from
/// the signal power and the target SNR. Returns the noisy signal and sigma.
pub fn add_awgn(signal: &Signal, spec: &NoiseSpec) -> Result<(Signal, f64)> {
    let sigma = spec.sigma_for(signal.samples())?;
    let noisy: Vec<f64> = signal
        .samples()
        .iter()
        .zip(GaussianNoise::new(spec.seed))
        .map(|(u, z)| u + sigma * z)
        .collect();
    Ok((signal.with_samples(noisy)?, sigma))
}
