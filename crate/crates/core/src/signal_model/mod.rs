//! Signal container, calibrated noise injection, quality metrics and a small
//! synthetic ECG generator.

mod metrics;
mod noise;
mod sigma;
mod synth;

pub use metrics::{mse, power, prd, snr_improvement};
pub use noise::{add_awgn, GaussianNoise, NoiseSpec};
pub use sigma::estimate_sigma;
pub use synth::{synth_ecg, SynthEcg, WAVES};

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A uniformly sampled, finite, nonempty real-valued record.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Signal {
    samples: Vec<f64>,
    sample_rate_hz: f64,
    label: String,
}

impl Signal {
    pub fn new(samples: Vec<f64>, sample_rate_hz: f64) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::SignalTooShort { len: 0, min: 1 });
        }
        if let Some(index) = samples.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteSample { index });
        }
        if !(sample_rate_hz.is_finite() && sample_rate_hz > 0.0) {
            return Err(Error::InvalidParameter {
                name: "sample_rate_hz",
                reason: "must be finite and > 0",
            });
        }
        Ok(Self { samples, sample_rate_hz, label: String::new() })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// New signal with the same rate and label.
    pub fn with_samples(&self, samples: Vec<f64>) -> Result<Self> {
        Ok(Signal::new(samples, self.sample_rate_hz)?.with_label(self.label.clone()))
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    /// Always false; kept for API symmetry with slices.
    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn sample_rate_hz(&self) -> f64 {
        self.sample_rate_hz
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Mean power `(1/N) * sum(x^2)`.
    pub fn power(&self) -> f64 {
        power(&self.samples)
    }

    pub fn peak_abs(&self) -> f64 {
        self.samples.iter().fold(0.0, |m, v| f64::max(m, libm::fabs(*v)))
    }
}

impl AsRef<[f64]> for Signal {
    fn as_ref(&self) -> &[f64] {
        &self.samples
    }
}

/// Scales to unit peak amplitude (the ±1 mV convention the matching threshold assumes).
pub fn normalize(signal: &Signal) -> Result<Signal> {
    let peak = signal.peak_abs();
    if peak == 0.0 {
        return Err(Error::AllZeroSignal);
    }
    let samples = signal.samples.iter().map(|v| v / peak).collect();
    Ok(Signal { samples, sample_rate_hz: signal.sample_rate_hz, label: signal.label.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn sig(v: &[f64]) -> Signal {
        Signal::new(v.to_vec(), 360.0).unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize(&sig(&[2.0, -4.0, 1.0])).unwrap().samples(), &[0.5, -1.0, 0.25]);
        assert_eq!(normalize(&sig(&[1.0, 1.0])).unwrap().samples(), &[1.0, 1.0]);
        assert_eq!(normalize(&sig(&[0.0, 0.0])), Err(Error::AllZeroSignal));
    }

    #[test]
    fn normalize_idempotent() {
        let x = sig(&[0.3, -7.1, 2.2, 1e-3, 6.9]);
        let once = normalize(&x).unwrap();
        let twice = normalize(&once).unwrap();
        assert_eq!(once, twice);
        assert_eq!(once.peak_abs(), 1.0);
    }

    #[test]
    fn invariants_enforced() {
        assert!(matches!(Signal::new(vec![], 1.0), Err(Error::SignalTooShort { .. })));
        assert_eq!(
            Signal::new(vec![0.0, f64::NAN], 1.0),
            Err(Error::NonFiniteSample { index: 1 })
        );
        assert!(Signal::new(vec![1.0], 0.0).is_err());
        assert!(Signal::new(vec![1.0], f64::INFINITY).is_err());
    }
}
