use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};

use super::{normalize, Signal};
use crate::error::{Error, Result};

/// One Gaussian component of a synthetic beat: `amplitude * exp(-(t - offset)^2 / (2 width^2))`,
/// with `offset` and `width` in seconds relative to the R peak.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Wave {
    pub name: char,
    pub amplitude: f64,
    pub offset_s: f64,
    pub width_s: f64,
}

/// The frozen P, Q, R, S, T bumps used by [`synth_ecg`].
pub const WAVES: [Wave; 5] = [
    Wave { name: 'P', amplitude: 0.12, offset_s: -0.200, width_s: 0.025 },
    Wave { name: 'Q', amplitude: -0.12, offset_s: -0.035, width_s: 0.010 },
    Wave { name: 'R', amplitude: 1.00, offset_s: 0.000, width_s: 0.011 },
    Wave { name: 'S', amplitude: -0.25, offset_s: 0.035, width_s: 0.011 },
    Wave { name: 'T', amplitude: 0.30, offset_s: 0.260, width_s: 0.045 },
];

/// R peak position within each beat, as a fraction of that beat's period.
const R_PHASE: f64 = 0.4;

/// Synthetic ECG configuration. Beat `b` lasts `60/bpm * (1 + jitter * (2u_b - 1))`
/// seconds with `u_b` uniform from ChaCha20 seeded by `seed`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthEcg {
    pub beats: usize,
    pub sample_rate_hz: f64,
    pub heart_rate_bpm: f64,
    pub seed: u64,
    /// Relative beat-period jitter, at most 0.02.
    pub jitter: f64,
}

impl SynthEcg {
    pub const DEFAULT_JITTER: f64 = 0.02;

    pub fn new(beats: usize, sample_rate_hz: f64, heart_rate_bpm: f64, seed: u64) -> Self {
        Self { beats, sample_rate_hz, heart_rate_bpm, seed, jitter: Self::DEFAULT_JITTER }
    }

    pub fn jitter(mut self, jitter: f64) -> Self {
        self.jitter = jitter;
        self
    }

    pub fn generate(&self) -> Result<Signal> {
        if self.beats == 0 {
            return Err(Error::InvalidParameter { name: "beats", reason: "must be >= 1" });
        }
        if !(self.sample_rate_hz.is_finite() && self.sample_rate_hz > 0.0) {
            return Err(Error::InvalidParameter { name: "sample_rate_hz", reason: "must be > 0" });
        }
        if !(self.heart_rate_bpm.is_finite() && self.heart_rate_bpm > 0.0) {
            return Err(Error::InvalidParameter { name: "heart_rate_bpm", reason: "must be > 0" });
        }
        if !(0.0..=0.02).contains(&self.jitter) {
            return Err(Error::InvalidParameter { name: "jitter", reason: "must lie in [0, 0.02]" });
        }
        let fs = self.sample_rate_hz;
        let base = 60.0 / self.heart_rate_bpm;
        let mut rng = ChaCha20Rng::seed_from_u64(self.seed);
        let periods: Vec<f64> = (0..self.beats)
            .map(|_| {
                let u = (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
                base * (1.0 + self.jitter * (2.0 * u - 1.0))
            })
            .collect();
        let total: f64 = periods.iter().sum();
        let n = libm::round(total * fs).max(1.0) as usize;
        let mut x = vec![0.0; n];
        let mut start = 0.0;
        for period in &periods {
            let r_peak = start + R_PHASE * period;
            for w in &WAVES {
                let centre = r_peak + w.offset_s;
                let reach = 6.0 * w.width_s;
                let lo = libm::ceil((centre - reach) * fs).max(0.0) as usize;
                let hi = (libm::floor((centre + reach) * fs).max(0.0) as usize).min(n - 1);
                for (i, v) in x.iter_mut().enumerate().take(hi + 1).skip(lo) {
                    let dt = i as f64 / fs - centre;
                    *v += w.amplitude * libm::exp(-dt * dt / (2.0 * w.width_s * w.width_s));
                }
            }
            start += period;
        }
        let raw = Signal::new(x, fs)?.with_label("synth_ecg");
        normalize(&raw)
    }
}

/// Quasi-periodic test ECG: five Gaussian bumps per beat ([`WAVES`]),
/// 2% seeded period jitter, normalized to unit peak.
pub fn synth_ecg(beats: usize, sample_rate_hz: f64, heart_rate_bpm: f64, seed: u64) -> Result<Signal> {
    SynthEcg::new(beats, sample_rate_hz, heart_rate_bpm, seed).generate()
}
