use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use super::eigen::symmetric_eigen;
use super::params::{NlwtParams, ProjectorKind};
use super::sdm::candidate_range;
use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Linear map from a `(2L+1)`-sample block to `n_components` features.
///
/// Rows of `basis` are orthonormal. Blocks are centered by `mean` before
/// projection; since every block of a window shares the same mean, distances
/// between projections do not depend on it.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureProjector {
    basis: Matrix,
    mean: Vec<f64>,
    kind: ProjectorKind,
}

impl FeatureProjector {
    /// Full-rank identity projector, mostly useful in tests.
    pub fn identity(dim: usize) -> Self {
        Self {
            basis: Matrix::from_fn(dim, dim, |i, j| if i == j { 1.0 } else { 0.0 }),
            mean: vec![0.0; dim],
            kind: ProjectorKind::Dct,
        }
    }

    pub fn dct(dim: usize, n_components: usize) -> Self {
        Self { basis: dct_basis(dim, n_components), mean: vec![0.0; dim], kind: ProjectorKind::Dct }
    }

    /// Builds a projector from explicit rows; they must be orthonormal.
    pub fn from_basis(basis: Matrix, mean: Vec<f64>, kind: ProjectorKind) -> Self {
        assert_eq!(basis.cols(), mean.len());
        Self { basis, mean, kind }
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn mean(&self) -> &[f64] {
        &self.mean
    }

    pub fn kind(&self) -> ProjectorKind {
        self.kind
    }

    pub fn block_len(&self) -> usize {
        self.basis.cols()
    }

    pub fn n_components(&self) -> usize {
        self.basis.rows()
    }

    /// Writes the features of `block` into `out`.
    pub fn project_into(&self, block: &[f64], out: &mut [f64]) {
        debug_assert_eq!(block.len(), self.block_len());
        for (r, o) in out.iter_mut().enumerate() {
            *o = self
                .basis
                .row(r)
                .iter()
                .zip(block.iter().zip(&self.mean))
                .map(|(b, (x, m))| b * (x - m))
                .sum();
        }
    }

    pub fn project(&self, block: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.n_components()];
        self.project_into(block, &mut out);
        out
    }
}

/// First `n_components` rows of the orthonormal DCT-II basis of size `dim`:
/// `b[k][n] = s_k cos(pi (n + 1/2) k / dim)`, `s_0 = sqrt(1/dim)`, `s_k = sqrt(2/dim)`.
pub fn dct_basis(dim: usize, n_components: usize) -> Matrix {
    let n = dim as f64;
    Matrix::from_fn(n_components, dim, |k, i| {
        let s = if k == 0 { libm::sqrt(1.0 / n) } else { libm::sqrt(2.0 / n) };
        s * libm::cos(PI * (i as f64 + 0.5) * k as f64 / n)
    })
}

/// Learns the feature projection for one reference block.
///
/// PCA uses the mean-centered covariance of every valid block in the search
/// window and keeps the leading `n_components` eigenvectors. A window whose
/// blocks are all identical (zero covariance) falls back to the DCT basis.
/// Fewer than two candidate blocks yields [`Error::DegenerateWindow`].
pub fn fit_projector(v: &[f64], reference_center: usize, params: &NlwtParams) -> Result<FeatureProjector> {
    let l = params.block_half_width;
    let dim = 2 * l + 1;
    let (lo, hi) = candidate_range(v.len(), reference_center, l, params.search_half_width)?;
    if params.projector == ProjectorKind::Dct {
        return Ok(FeatureProjector::dct(dim, params.n_components));
    }
    let count = hi - lo + 1;
    if count < 2 {
        return Err(Error::DegenerateWindow { candidates: count });
    }
    let mut mean = vec![0.0; dim];
    let mut energy = 0.0;
    for j in lo..=hi {
        for (m, x) in mean.iter_mut().zip(&v[j - l..=j + l]) {
            *m += x;
            energy += x * x;
        }
    }
    mean.iter_mut().for_each(|m| *m /= count as f64);

    let mut cov = Matrix::zeros(dim, dim);
    let mut centered = vec![0.0; dim];
    for j in lo..=hi {
        for ((c, x), m) in centered.iter_mut().zip(&v[j - l..=j + l]).zip(&mean) {
            *c = x - m;
        }
        for a in 0..dim {
            let ca = centered[a];
            let row = cov.row_mut(a);
            for b in a..dim {
                row[b] += ca * centered[b];
            }
        }
    }
    let trace: f64 = (0..dim).map(|i| cov.get(i, i)).sum();
    // identical blocks: only rounding residue of the mean remains
    if trace <= 1e-20 * energy {
        return Ok(FeatureProjector::dct(dim, params.n_components));
    }
    let (_, vectors) = symmetric_eigen(&cov);
    let basis = Matrix::from_fn(params.n_components, dim, |r, c| vectors.get(r, c));
    Ok(FeatureProjector { basis, mean, kind: ProjectorKind::Pca })
}
