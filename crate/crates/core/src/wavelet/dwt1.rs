use alloc::vec;
use alloc::vec::Vec;

use super::{analyze, max_levels, padded_len, synthesize, WaveletFilter};
use crate::error::{Error, Result};

/// Mallat pyramid of a 1-D signal.
#[derive(Debug, Clone, PartialEq)]
pub struct Dwt1Coeffs {
    /// Coarsest approximation.
    pub approx: Vec<f64>,
    /// Detail coefficients, finest level first.
    pub details: Vec<Vec<f64>>,
    /// Input length of each level before padding, finest first.
    pub input_lens: Vec<usize>,
}

impl Dwt1Coeffs {
    pub fn levels(&self) -> usize {
        self.details.len()
    }
}

/// Multi-level periodized DWT.
///
/// Requires at least as many samples as filter taps and `1 <= levels <= floor(log2(len))`.
pub fn dwt1_forward(x: &[f64], filter: &WaveletFilter, levels: usize) -> Result<Dwt1Coeffs> {
    let min = filter.len().max(2);
    if x.len() < min {
        return Err(Error::SignalTooShort { len: x.len(), min });
    }
    let max = max_levels(x.len());
    if levels == 0 || levels > max {
        return Err(Error::InvalidLevels { requested: levels, max });
    }
    let (lo, hi) = (filter.lowpass(), filter.highpass());
    let mut current = x.to_vec();
    let mut details = Vec::with_capacity(levels);
    let mut input_lens = Vec::with_capacity(levels);
    for _ in 0..levels {
        input_lens.push(current.len());
        if current.len() % 2 == 1 {
            let last = current[current.len() - 1];
            current.push(last);
        }
        let half = current.len() / 2;
        let mut approx = vec![0.0; half];
        let mut detail = vec![0.0; half];
        analyze(&current, lo, hi, &mut approx, &mut detail);
        details.push(detail);
        current = approx;
    }
    Ok(Dwt1Coeffs { approx: current, details, input_lens })
}

/// Inverse of [`dwt1_forward`], cropping the replicate padding at each level.
pub fn dwt1_inverse(coeffs: &Dwt1Coeffs, filter: &WaveletFilter) -> Result<Vec<f64>> {
    let levels = coeffs.details.len();
    if coeffs.input_lens.len() != levels {
        return Err(Error::ShapeMismatch {
            expected: (levels, 1),
            found: (coeffs.input_lens.len(), 1),
        });
    }
    let (lo, hi) = (filter.lowpass(), filter.highpass());
    let mut current = coeffs.approx.clone();
    for lvl in (0..levels).rev() {
        let detail = &coeffs.details[lvl];
        let n = coeffs.input_lens[lvl];
        let half = padded_len(n) / 2;
        if current.len() != half || detail.len() != half {
            return Err(Error::ShapeMismatch {
                expected: (half, 1),
                found: (current.len().max(detail.len()), 1),
            });
        }
        let mut out = vec![0.0; 2 * half];
        synthesize(&current, detail, lo, hi, &mut out);
        out.truncate(n);
        current = out;
    }
    Ok(current)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wavelet::WaveletName;
    use core::f64::consts::SQRT_2;

    #[test]
    fn haar_pair() {
        let f = WaveletFilter::new(WaveletName::Haar);
        let c = dwt1_forward(&[2.0, 4.0], &f, 1).unwrap();
        assert!((c.approx[0] - 3.0 * SQRT_2).abs() < 1e-15);
        assert!((c.details[0][0] + SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn haar_constant_has_zero_details() {
        let f = WaveletFilter::new(WaveletName::Haar);
        let c = dwt1_forward(&[3.5; 4], &f, 2).unwrap();
        assert!(c.details.iter().flatten().all(|&d| d == 0.0));
    }

    #[test]
    fn parseval_on_even_lengths() {
        for name in WaveletName::ALL {
            let f = WaveletFilter::new(name);
            let x: Vec<f64> = (0..64).map(|i| libm::sin(i as f64 * 0.37) + (i % 5) as f64).collect();
            let c = dwt1_forward(&x, &f, 6).unwrap();
            let e_in: f64 = x.iter().map(|v| v * v).sum();
            let e_out: f64 = c.approx.iter().chain(c.details.iter().flatten()).map(|v| v * v).sum();
            assert!((e_in - e_out).abs() < 1e-10 * e_in, "{name}");
        }
    }

    #[test]
    fn odd_lengths_round_trip() {
        for name in WaveletName::ALL {
            let f = WaveletFilter::new(name);
            for n in f.len().max(2)..40 {
                let x: Vec<f64> = (0..n).map(|i| libm::cos(i as f64 * 1.3) * (i as f64 + 1.0)).collect();
                for levels in 1..=max_levels(n) {
                    let c = dwt1_forward(&x, &f, levels).unwrap();
                    let y = dwt1_inverse(&c, &f).unwrap();
                    assert_eq!(y.len(), n);
                    for (a, b) in x.iter().zip(&y) {
                        assert!((a - b).abs() < 1e-10);
                    }
                }
            }
        }
    }

    #[test]
    fn errors() {
        let f = WaveletFilter::new(WaveletName::Db4);
        assert_eq!(
            dwt1_forward(&[1.0; 5], &f, 1),
            Err(Error::SignalTooShort { len: 5, min: 8 })
        );
        let h = WaveletFilter::new(WaveletName::Haar);
        assert_eq!(dwt1_forward(&[1.0; 8], &h, 0), Err(Error::InvalidLevels { requested: 0, max: 3 }));
        assert_eq!(dwt1_forward(&[1.0; 8], &h, 4), Err(Error::InvalidLevels { requested: 4, max: 3 }));
    }
}
