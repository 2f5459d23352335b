//! Orthogonal periodized wavelet transforms (1-D Mallat pyramid and separable
//! 2-D) plus hard/soft coefficient shrinkage.
//!
//! Boundary rule shared by every transform: before each level, an axis of odd
//! length is extended by replicating its last sample once, then filtered with
//! periodic wrap-around. The padding is recorded so the inverse can crop it.

mod dwt1;
mod dwt2;
mod filter;
mod shrink;

pub use dwt1::{dwt1_forward, dwt1_inverse, Dwt1Coeffs};
pub use dwt2::{default_levels, dwt2_forward, dwt2_inverse, dwt2_max_levels, Dwt2Coeffs, Dwt2Level};
pub use filter::{WaveletFilter, WaveletName};
pub use shrink::{hard_threshold, hard_threshold_in_place, soft_threshold, soft_threshold_in_place};

/// Deepest decomposition for an axis of `len` samples: `floor(log2(len))`.
///
/// With the pad-to-even rule every level then starts from at least two samples.
/// The bound does not depend on the filter length because periodization keeps
/// the transform orthonormal even when the filter wraps more than once.
pub fn max_levels(len: usize) -> usize {
    if len < 2 {
        0
    } else {
        (usize::BITS - 1 - len.leading_zeros()) as usize
    }
}

#[inline]
pub(crate) fn padded_len(n: usize) -> usize {
    n + (n & 1)
}

/// One analysis step on an even-length input: `approx[i] = sum_k lo[k] x[(2i+k) mod n]`.
pub(crate) fn analyze(x: &[f64], lo: &[f64], hi: &[f64], approx: &mut [f64], detail: &mut [f64]) {
    let n = x.len();
    debug_assert!(n.is_multiple_of(2));
    let half = n / 2;
    for i in 0..half {
        let mut a = 0.0;
        let mut d = 0.0;
        let mut idx = 2 * i;
        for (l, h) in lo.iter().zip(hi) {
            if idx >= n {
                idx %= n;
            }
            let v = x[idx];
            a += l * v;
            d += h * v;
            idx += 1;
        }
        approx[i] = a;
        detail[i] = d;
    }
}

/// Adjoint of [`analyze`]; for orthonormal filters this is its exact inverse.
pub(crate) fn synthesize(approx: &[f64], detail: &[f64], lo: &[f64], hi: &[f64], out: &mut [f64]) {
    let n = out.len();
    debug_assert_eq!(approx.len() * 2, n);
    out.iter_mut().for_each(|v| *v = 0.0);
    for (i, (&a, &d)) in approx.iter().zip(detail).enumerate() {
        let mut idx = 2 * i;
        for (l, h) in lo.iter().zip(hi) {
            if idx >= n {
                idx %= n;
            }
            out[idx] += l * a + h * d;
            idx += 1;
        }
    }
}
