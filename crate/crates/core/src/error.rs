use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// The signal (or the clean reference) has zero peak amplitude or zero power.
    AllZeroSignal,
    /// A sample is NaN or infinite.
    NonFiniteSample { index: usize },
    SignalTooShort { len: usize, min: usize },
    LengthMismatch { left: usize, right: usize },
    /// `snr_improvement` with a denoised signal identical to the clean one.
    ZeroDenominator,
    InvalidParameter { name: &'static str, reason: &'static str },
    InvalidLevels { requested: usize, max: usize },
    MatrixTooSmall { rows: usize, cols: usize },
    ShapeMismatch { expected: (usize, usize), found: (usize, usize) },
    OutOfBounds { index: usize, len: usize },
    /// Fewer than two candidate blocks in the search window.
    DegenerateWindow { candidates: usize },
    /// A sample never received an estimate during aggregation.
    UncoveredSample { index: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::AllZeroSignal => write!(f, "AllZeroSignal: signal is identically zero"),
            Error::NonFiniteSample { index } => write!(f, "sample {index} is not finite"),
            Error::SignalTooShort { len, min } => {
                write!(f, "SignalTooShort: length {len}, need at least {min}")
            }
            Error::LengthMismatch { left, right } => {
                write!(f, "LengthMismatch: {left} vs {right} samples")
            }
            Error::ZeroDenominator => {
                write!(f, "ZeroDenominator: denoised signal equals the clean signal")
            }
            Error::InvalidParameter { name, reason } => {
                write!(f, "invalid parameter {name}: {reason}")
            }
            Error::InvalidLevels { requested, max } => {
                write!(f, "InvalidLevels: requested {requested}, allowed 1..={max}")
            }
            Error::MatrixTooSmall { rows, cols } => {
                write!(f, "MatrixTooSmall: {rows}x{cols} (need at least 2 rows)")
            }
            Error::ShapeMismatch { expected, found } => write!(
                f,
                "ShapeMismatch: expected {}x{}, found {}x{}",
                expected.0, expected.1, found.0, found.1
            ),
            Error::OutOfBounds { index, len } => {
                write!(f, "OutOfBounds: index {index} for length {len}")
            }
            Error::DegenerateWindow { candidates } => {
                write!(f, "DegenerateWindow: {candidates} candidate block(s)")
            }
            Error::UncoveredSample { index } => {
                write!(f, "UncoveredSample: sample {index} has no estimate")
            }
        }
    }
}

impl core::error::Error for Error {}
