//! Nonlocal wavelet transform (NLWT) denoising for quasi-periodic 1-D signals
//! such as ECG, together with the nonlocal means (NLM) baseline, calibrated
//! AWGN injection and the usual quality metrics (SNR improvement, MSE, PRD).
//!
//! The crate is `no_std` and only needs `alloc`. Enable the `std` feature for
//! `std::error::Error` integration, `parallel` to shrink similarity matrices
//! on the rayon pool, and `serde` for serializable parameter and report types.
//!
//! Pipeline overview:
//!
//! 1. [`block_match`] schedules reference blocks every `k` samples, learns a
//!    local projection (PCA or DCT) over the search window and gathers the most
//!    similar blocks into a similarity data matrix ([`block_match::Sdm`]).
//! 2. [`nlwt::shrink_sdm`] hard-thresholds the separable 2-D DWT of each
//!    matrix at `c * sigma`.
//! 3. [`nlwt::aggregate`] puts every denoised block back at its source location
//!    and averages overlapping estimates with weights `1 / (N_retained * sigma^2)`.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod block_match;
pub mod error;
pub mod matrix;
pub mod nlm;
pub mod nlwt;
pub mod report;
pub mod signal_model;
pub mod wavelet;

pub use error::{Error, Result};
pub use matrix::Matrix;
pub use wavelet::{WaveletFilter, WaveletName};
pub use signal_model::{NoiseSpec, Signal};
pub use nlwt::denoise_nlwt;
pub use block_match::{NlwtParams, ProjectorKind, Sdm, ThresholdPolicy};
pub use nlm::{denoise_nlm, NlmParams};
pub use report::{DenoiseReport, Method, MethodParams, SnrImprovement};
