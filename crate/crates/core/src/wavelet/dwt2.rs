use alloc::vec;
use alloc::vec::Vec;

use super::{analyze, max_levels, padded_len, synthesize, WaveletFilter};
use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Detail subbands of one decomposition level.
///
/// The first letter names the filter applied along the row index (down each
/// column), the second the filter along the column index (within each row):
/// `lh` is low vertically and high horizontally. When the column axis is not
/// transformed (single-column input) `lh` and `hh` have zero columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Dwt2Level {
    /// Shape entering this level, before padding.
    pub input_shape: (usize, usize),
    /// Whether an extra replicated row / column was appended.
    pub padded: (bool, bool),
    pub lh: Matrix,
    pub hl: Matrix,
    pub hh: Matrix,
}

impl Dwt2Level {
    fn expected_shapes(&self, transform_cols: bool) -> ((usize, usize), (usize, usize)) {
        let (r, c) = self.input_shape;
        let half_r = padded_len(r) / 2;
        let (low_c, high_c) = if transform_cols {
            (padded_len(c) / 2, padded_len(c) / 2)
        } else {
            (c, 0)
        };
        ((half_r, low_c), (half_r, high_c))
    }
}

/// Separable 2-D wavelet decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct Dwt2Coeffs {
    /// Coarsest LL subband.
    pub approx: Matrix,
    /// Finest level first.
    pub levels: Vec<Dwt2Level>,
    pub original_shape: (usize, usize),
    /// False for single-column inputs, which degrade to a 1-D transform down the column.
    pub transform_cols: bool,
}

impl Dwt2Coeffs {
    pub fn level_count(&self) -> usize {
        self.levels.len()
    }

    /// Total number of stored coefficients, including padding growth.
    pub fn coefficient_count(&self) -> usize {
        self.approx.len()
            + self
                .levels
                .iter()
                .map(|l| l.lh.len() + l.hl.len() + l.hh.len())
                .sum::<usize>()
    }

    pub fn energy(&self) -> f64 {
        self.approx.frobenius_sq()
            + self
                .levels
                .iter()
                .map(|l| l.lh.frobenius_sq() + l.hl.frobenius_sq() + l.hh.frobenius_sq())
                .sum::<f64>()
    }

    /// All detail coefficients, level by level.
    pub fn details(&self) -> impl Iterator<Item = &f64> {
        self.levels.iter().flat_map(|l| {
            l.lh.as_slice().iter().chain(l.hl.as_slice()).chain(l.hh.as_slice())
        })
    }

    pub fn details_mut(&mut self) -> impl Iterator<Item = &mut f64> {
        self.levels.iter_mut().flat_map(|l| {
            l.lh.as_mut_slice()
                .iter_mut()
                .chain(l.hl.as_mut_slice().iter_mut())
                .chain(l.hh.as_mut_slice().iter_mut())
        })
    }
}

/// Deepest allowed decomposition of a `rows x cols` matrix.
pub fn dwt2_max_levels(rows: usize, cols: usize) -> usize {
    if cols > 1 {
        max_levels(rows.min(cols))
    } else {
        max_levels(rows)
    }
}

/// `min(3, max)` levels, the depth used for similarity matrices unless overridden.
pub fn default_levels(rows: usize, cols: usize) -> usize {
    dwt2_max_levels(rows, cols).min(3)
}

/// Transforms rows then columns at each level, recursing on LL.
pub fn dwt2_forward(x: &Matrix, filter: &WaveletFilter, levels: usize) -> Result<Dwt2Coeffs> {
    let (rows, cols) = x.shape();
    if rows < 2 || cols < 1 {
        return Err(Error::MatrixTooSmall { rows, cols });
    }
    let max = dwt2_max_levels(rows, cols);
    if levels == 0 || levels > max {
        return Err(Error::InvalidLevels { requested: levels, max });
    }
    let transform_cols = cols > 1;
    let (lo, hi) = (filter.lowpass(), filter.highpass());
    let mut current = x.clone();
    let mut out = Vec::with_capacity(levels);
    for _ in 0..levels {
        let input_shape = current.shape();
        let padded = (
            input_shape.0 % 2 == 1,
            transform_cols && input_shape.1 % 2 == 1,
        );
        let p = pad(&current, padded);
        let (low, high) = if transform_cols {
            analyze_rows(&p, lo, hi)
        } else {
            (p, Matrix::zeros(padded_len(input_shape.0), 0))
        };
        let (ll, hl) = analyze_cols(&low, lo, hi);
        let (lh, hh) = analyze_cols(&high, lo, hi);
        out.push(Dwt2Level { input_shape, padded, lh, hl, hh });
        current = ll;
    }
    Ok(Dwt2Coeffs { approx: current, levels: out, original_shape: (rows, cols), transform_cols })
}

pub fn dwt2_inverse(coeffs: &Dwt2Coeffs, filter: &WaveletFilter) -> Result<Matrix> {
    let (lo, hi) = (filter.lowpass(), filter.highpass());
    let mut current = coeffs.approx.clone();
    for level in coeffs.levels.iter().rev() {
        let (low_shape, high_shape) = level.expected_shapes(coeffs.transform_cols);
        for (m, expected) in [
            (&current, low_shape),
            (&level.hl, low_shape),
            (&level.lh, high_shape),
            (&level.hh, high_shape),
        ] {
            if m.shape() != expected {
                return Err(Error::ShapeMismatch { expected, found: m.shape() });
            }
        }
        let low = synthesize_cols(&current, &level.hl, lo, hi);
        let full = if coeffs.transform_cols {
            let high = synthesize_cols(&level.lh, &level.hh, lo, hi);
            synthesize_rows(&low, &high, lo, hi)
        } else {
            low
        };
        current = crop(&full, level.input_shape);
    }
    if current.shape() != coeffs.original_shape {
        return Err(Error::ShapeMismatch { expected: coeffs.original_shape, found: current.shape() });
    }
    Ok(current)
}

fn pad(m: &Matrix, (pad_rows, pad_cols): (bool, bool)) -> Matrix {
    if !pad_rows && !pad_cols {
        return m.clone();
    }
    let (r, c) = m.shape();
    let rp = r + pad_rows as usize;
    let cp = c + pad_cols as usize;
    Matrix::from_fn(rp, cp, |i, j| m.get(i.min(r - 1), j.min(c - 1)))
}

fn crop(m: &Matrix, (rows, cols): (usize, usize)) -> Matrix {
    if m.shape() == (rows, cols) {
        return m.clone();
    }
    Matrix::from_fn(rows, cols, |i, j| m.get(i, j))
}

fn analyze_rows(m: &Matrix, lo: &[f64], hi: &[f64]) -> (Matrix, Matrix) {
    let (r, c) = m.shape();
    let half = c / 2;
    let mut low = Matrix::zeros(r, half);
    let mut high = Matrix::zeros(r, half);
    for i in 0..r {
        analyze(m.row(i), lo, hi, low.row_mut(i), high.row_mut(i));
    }
    (low, high)
}

fn analyze_cols(m: &Matrix, lo: &[f64], hi: &[f64]) -> (Matrix, Matrix) {
    let (r, c) = m.shape();
    let half = r / 2;
    let mut low = Matrix::zeros(half, c);
    let mut high = Matrix::zeros(half, c);
    let mut col = vec![0.0; r];
    let mut a = vec![0.0; half];
    let mut d = vec![0.0; half];
    for j in 0..c {
        for (i, v) in col.iter_mut().enumerate() {
            *v = m.get(i, j);
        }
        analyze(&col, lo, hi, &mut a, &mut d);
        for i in 0..half {
            low.set(i, j, a[i]);
            high.set(i, j, d[i]);
        }
    }
    (low, high)
}

fn synthesize_rows(low: &Matrix, high: &Matrix, lo: &[f64], hi: &[f64]) -> Matrix {
    let (r, half) = low.shape();
    let mut out = Matrix::zeros(r, 2 * half);
    for i in 0..r {
        synthesize(low.row(i), high.row(i), lo, hi, out.row_mut(i));
    }
    out
}

fn synthesize_cols(low: &Matrix, high: &Matrix, lo: &[f64], hi: &[f64]) -> Matrix {
    let (half, c) = low.shape();
    let mut out = Matrix::zeros(2 * half, c);
    let mut a = vec![0.0; half];
    let mut d = vec![0.0; half];
    let mut col = vec![0.0; 2 * half];
    for j in 0..c {
        for i in 0..half {
            a[i] = low.get(i, j);
            d[i] = high.get(i, j);
        }
        synthesize(&a, &d, lo, hi, &mut col);
        for (i, v) in col.iter().enumerate() {
            out.set(i, j, *v);
        }
    }
    out
}
