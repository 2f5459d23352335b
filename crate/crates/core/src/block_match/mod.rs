//! Reference-block scheduling, locally learned feature projection and
//! similarity data matrix (SDM) assembly.

mod eigen;
mod params;
mod projector;
mod sdm;

pub use eigen::symmetric_eigen;
pub use params::{NlwtParams, ProjectorKind, ThresholdPolicy};
pub use projector::{dct_basis, fit_projector, FeatureProjector};
pub use sdm::{
    candidate_range, extract_block, extract_sdm, extract_sdm_with, reference_schedule, similarity,
    ReferenceSchedule, Sdm,
};
