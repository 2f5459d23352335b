use core::fmt;
use core::str::FromStr;

use crate::block_match::NlwtParams;
use crate::error::{Error, Result};
use crate::nlm::NlmParams;
use crate::signal_model::{mse, power, prd, snr_improvement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Method {
    Nlm,
    Nlwt,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Nlm => "nlm",
            Method::Nlwt => "nlwt",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "nlm" => Ok(Method::Nlm),
            "nlwt" => Ok(Method::Nlwt),
            _ => Err(Error::InvalidParameter { name: "method", reason: "expected nlm or nlwt" }),
        }
    }
}

/// Parameter snapshot of the method that produced a report.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(untagged))]
pub enum MethodParams {
    Nlm(NlmParams),
    Nlwt(NlwtParams),
}

/// SNR improvement, with an explicit marker for a perfect reconstruction
/// (zero residual error), which has no finite dB value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SnrImprovement {
    Db(f64),
    Perfect,
}

impl SnrImprovement {
    pub fn db(self) -> Option<f64> {
        match self {
            SnrImprovement::Db(v) => Some(v),
            SnrImprovement::Perfect => None,
        }
    }
}

/// Quality metrics of one denoising run plus its provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct DenoiseReport {
    pub method: Method,
    pub seed: u64,
    pub target_snr_db: f64,
    /// Noise standard deviation handed to the denoiser.
    pub sigma: f64,
    pub snr_imp: SnrImprovement,
    pub mse: f64,
    pub prd_percent: f64,
    /// `(1/N) sum u^2` of the clean signal, so PRD can be recomputed from MSE.
    pub clean_power: f64,
    pub params: MethodParams,
}

impl DenoiseReport {
    #[allow(clippy::too_many_arguments)]
    pub fn evaluate(
        clean: &[f64],
        noisy: &[f64],
        denoised: &[f64],
        method: Method,
        params: MethodParams,
        seed: u64,
        target_snr_db: f64,
        sigma: f64,
    ) -> Result<Self> {
        let snr_imp = match snr_improvement(clean, noisy, denoised) {
            Ok(v) => SnrImprovement::Db(v),
            Err(Error::ZeroDenominator) => SnrImprovement::Perfect,
            Err(e) => return Err(e),
        };
        Ok(Self {
            method,
            seed,
            target_snr_db,
            sigma,
            snr_imp,
            mse: mse(clean, denoised)?,
            prd_percent: prd(clean, denoised)?,
            clean_power: power(clean),
            params,
        })
    }
}

/// PRD from an MSE and the clean signal power.
pub fn prd_from_mse(mse: f64, clean_power: f64) -> f64 {
    100.0 * libm::sqrt(mse / clean_power)
}
