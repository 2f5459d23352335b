#![allow(clippy::excessive_precision)]

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::Error;

const HAAR: [f64; 2] = [core::f64::consts::FRAC_1_SQRT_2, core::f64::consts::FRAC_1_SQRT_2];

const DB2: [f64; 4] = [
    0.48296291314453414337,
    0.83651630373780790558,
    0.22414386804201338103,
    -0.12940952255126038117,
];

const DB4: [f64; 8] = [
    0.230377813308896501,
    0.714846570552915647,
    0.630880767929858908,
    -0.027983769416859854,
    -0.187034811719093084,
    0.030841381835560764,
    0.032883011666885200,
    -0.010597401785069032,
];

const SYM4: [f64; 8] = [
    0.032223100604051467872,
    -0.012603967262031303754,
    -0.099219543576633532585,
    0.29785779560530605140,
    0.80373875180513208088,
    0.49761866763277498998,
    -0.029635527646002491764,
    -0.075765714789502213228,
];

/// Scaling (lowpass) filters by name. New orthonormal filters are added here.
const FILTER_TABLE: &[(WaveletName, &[f64])] = &[
    (WaveletName::Haar, &HAAR),
    (WaveletName::Db2, &DB2),
    (WaveletName::Db4, &DB4),
    (WaveletName::Sym4, &SYM4),
];

/// Shipped orthonormal wavelets. `Haar` is the 2-tap filter (Daubechies-1);
/// `Db2` is the 4-tap Daubechies filter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum WaveletName {
    #[default]
    Haar,
    Db2,
    Db4,
    Sym4,
}

impl WaveletName {
    pub const ALL: [WaveletName; 4] =
        [WaveletName::Haar, WaveletName::Db2, WaveletName::Db4, WaveletName::Sym4];

    pub fn as_str(self) -> &'static str {
        match self {
            WaveletName::Haar => "haar",
            WaveletName::Db2 => "db2",
            WaveletName::Db4 => "db4",
            WaveletName::Sym4 => "sym4",
        }
    }
}

impl fmt::Display for WaveletName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for WaveletName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "haar" | "db1" => Ok(WaveletName::Haar),
            "db2" => Ok(WaveletName::Db2),
            "db4" => Ok(WaveletName::Db4),
            "sym4" => Ok(WaveletName::Sym4),
            _ => Err(Error::InvalidParameter {
                name: "wavelet",
                reason: "expected one of haar, db2, db4, sym4",
            }),
        }
    }
}

/// Orthonormal analysis/synthesis filter pair.
///
/// The highpass filter is the quadrature mirror of the lowpass one,
/// `hi[k] = (-1)^k lo[n-1-k]`, and synthesis uses the same pair transposed.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveletFilter {
    name: WaveletName,
    lowpass: &'static [f64],
    highpass: Vec<f64>,
}

impl WaveletFilter {
    pub fn new(name: WaveletName) -> Self {
        let lowpass = FILTER_TABLE
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, c)| *c)
            .expect("every WaveletName has a table entry");
        let n = lowpass.len();
        let highpass = (0..n)
            .map(|k| if k % 2 == 0 { lowpass[n - 1 - k] } else { -lowpass[n - 1 - k] })
            .collect();
        Self { name, lowpass, highpass }
    }

    pub fn name(&self) -> WaveletName {
        self.name
    }

    pub fn lowpass(&self) -> &[f64] {
        self.lowpass
    }

    pub fn highpass(&self) -> &[f64] {
        &self.highpass
    }

    /// Number of taps.
    pub fn len(&self) -> usize {
        self.lowpass.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lowpass.is_empty()
    }
}

impl From<WaveletName> for WaveletFilter {
    fn from(name: WaveletName) -> Self {
        Self::new(name)
    }
}
