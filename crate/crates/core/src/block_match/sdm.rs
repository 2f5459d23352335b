use alloc::vec;
use alloc::vec::Vec;

use super::params::NlwtParams;
use super::projector::{fit_projector, FeatureProjector};
use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Similarity data matrix: column 0 is the reference block, the remaining
/// columns are matched blocks in order of increasing projected distance.
#[derive(Debug, Clone, PartialEq)]
pub struct Sdm {
    pub matrix: Matrix,
    /// Block centers, one per column, reference first.
    pub locations: Vec<usize>,
    /// Projected squared distance of each column to the reference (0 for column 0).
    pub distances: Vec<f64>,
    pub reference_center: usize,
}

impl Sdm {
    pub fn block_half_width(&self) -> usize {
        self.matrix.rows() / 2
    }

    pub fn columns(&self) -> usize {
        self.locations.len()
    }
}

/// Reference centers `L, L+k, L+2k, ...` plus an optional tail block ending at
/// the last sample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReferenceSchedule {
    pub centers: Vec<usize>,
    /// True when the last center was appended to cover the end of the signal.
    pub tail: bool,
}

impl ReferenceSchedule {
    /// Number of centers on the arithmetic grid, `1 + floor((N - (2L+1)) / k)`.
    pub fn arithmetic_count(&self) -> usize {
        self.centers.len() - self.tail as usize
    }
}

/// The `2L+1` samples centered at `center`.
pub fn extract_block(v: &[f64], center: usize, half_width: usize) -> Result<&[f64]> {
    if center < half_width || center + half_width >= v.len() {
        return Err(Error::OutOfBounds { index: center, len: v.len() });
    }
    Ok(&v[center - half_width..=center + half_width])
}

pub fn reference_schedule(n: usize, half_width: usize, shift: usize) -> Result<ReferenceSchedule> {
    let block = 2 * half_width + 1;
    if n < block {
        return Err(Error::SignalTooShort { len: n, min: block });
    }
    if shift == 0 {
        return Err(Error::InvalidParameter { name: "k", reason: "shift must be >= 1" });
    }
    let count = 1 + (n - block) / shift;
    let mut centers: Vec<usize> = (0..count).map(|t| half_width + t * shift).collect();
    let last = *centers.last().expect("count >= 1");
    let tail_center = n - 1 - half_width;
    let tail = last < tail_center;
    if tail {
        centers.push(tail_center);
    }
    Ok(ReferenceSchedule { centers, tail })
}

/// Inclusive range of candidate centers `[ref - M, ref + M]` clamped to valid blocks.
pub fn candidate_range(n: usize, reference: usize, half_width: usize, search: usize) -> Result<(usize, usize)> {
    if reference < half_width || reference + half_width >= n {
        return Err(Error::OutOfBounds { index: reference, len: n });
    }
    let lo = reference.saturating_sub(search).max(half_width);
    let hi = (reference + search).min(n - 1 - half_width);
    Ok((lo, hi))
}

/// Squared Euclidean distance between the projections of two blocks.
pub fn similarity(a: &[f64], b: &[f64], proj: &FeatureProjector) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch { left: a.len(), right: b.len() });
    }
    if a.len() != proj.block_len() {
        return Err(Error::LengthMismatch { left: a.len(), right: proj.block_len() });
    }
    let pa = proj.project(a);
    let pb = proj.project(b);
    Ok(pa.iter().zip(&pb).map(|(x, y)| (x - y) * (x - y)).sum())
}

/// Fits the projector for `reference_center` and gathers its SDM.
pub fn extract_sdm(v: &[f64], reference_center: usize, params: &NlwtParams) -> Result<Sdm> {
    let proj = match fit_projector(v, reference_center, params) {
        Ok(p) => p,
        Err(Error::DegenerateWindow { .. }) => {
            FeatureProjector::dct(params.block_len(), params.n_components)
        }
        Err(e) => return Err(e),
    };
    extract_sdm_with(v, reference_center, params, &proj)
}

/// SDM assembly with a given projector.
///
/// Candidates step by one sample through the clamped search window and match
/// when their projected distance is at most `tau`. At most `m - 1` matches are
/// kept, ordered by distance, then by `|j - reference|`, then by `j`.
pub fn extract_sdm_with(
    v: &[f64],
    reference_center: usize,
    params: &NlwtParams,
    proj: &FeatureProjector,
) -> Result<Sdm> {
    let l = params.block_half_width;
    let (lo, hi) = candidate_range(v.len(), reference_center, l, params.search_half_width)?;
    let reference = extract_block(v, reference_center, l)?;
    let n_feat = proj.n_components();
    let reference_feat = proj.project(reference);
    let mut feat = vec![0.0; n_feat];

    let mut matches: Vec<(f64, usize)> = Vec::new();
    if params.max_blocks > 1 {
        for j in lo..=hi {
            if j == reference_center {
                continue;
            }
            proj.project_into(&v[j - l..=j + l], &mut feat);
            let d: f64 = feat.iter().zip(&reference_feat).map(|(x, y)| (x - y) * (x - y)).sum();
            if d <= params.match_threshold {
                matches.push((d, j));
            }
        }
    }
    let dist_to_ref = |j: usize| j.abs_diff(reference_center);
    matches.sort_by(|a, b| {
        a.0.total_cmp(&b.0)
            .then_with(|| dist_to_ref(a.1).cmp(&dist_to_ref(b.1)))
            .then_with(|| a.1.cmp(&b.1))
    });
    matches.truncate(params.max_blocks - 1);

    let mut locations = Vec::with_capacity(matches.len() + 1);
    let mut distances = Vec::with_capacity(matches.len() + 1);
    locations.push(reference_center);
    distances.push(0.0);
    for (d, j) in matches {
        locations.push(j);
        distances.push(d);
    }
    let blocks: Vec<&[f64]> = locations.iter().map(|&j| &v[j - l..=j + l]).collect();
    Ok(Sdm { matrix: Matrix::from_columns(&blocks), locations, distances, reference_center })
}
