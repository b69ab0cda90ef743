use core::fmt;

/// Errors raised by the interferometer models and the sensitivity calculus.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A parameter is outside its physical range.
    OutOfRange { name: &'static str, value: f64 },
    /// The requested operation needs a different interferometer topology.
    WrongVariant { expected: &'static str },
    /// The fringe has no amplitude, so the phase cannot be read out.
    NoFringe,
    /// The slope of the readout vanishes at the requested phase.
    DegenerateSlope { phase: f64 },
    /// The optimal-phase argument left [-1, 1] by more than the clamp tolerance.
    InvalidBranch { argument: f64 },
    /// A closed form was evaluated outside its domain.
    Domain(&'static str),
    /// The mean photon number is zero.
    ZeroMean,
    /// The Fisher series needed more terms than the configured cap.
    TruncationFailure { required: u64, cap: u64 },
    /// The objective was non-finite on the whole search grid.
    NoMinimum,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::OutOfRange { name, value } => {
                write!(f, "parameter `{name}` out of range: {value}")
            }
            Error::WrongVariant { expected } => {
                write!(f, "operation requires a {expected} interferometer")
            }
            Error::NoFringe => f.write_str("fringe amplitude is zero"),
            Error::DegenerateSlope { phase } => {
                write!(f, "readout slope vanishes at phase {phase}")
            }
            Error::InvalidBranch { argument } => {
                write!(f, "optimal-phase cosine {argument} lies outside [-1, 1]")
            }
            Error::Domain(what) => write!(f, "domain error: {what}"),
            Error::ZeroMean => f.write_str("mean photon number is zero"),
            Error::TruncationFailure { required, cap } => {
                write!(f, "Fisher series needs {required} terms, cap is {cap}")
            }
            Error::NoMinimum => f.write_str("objective is non-finite across the whole grid"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn check_unit(name: &'static str, value: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(Error::OutOfRange { name, value })
    }
}

pub(crate) fn check_nonneg(name: &'static str, value: f64) -> Result<f64> {
    if value >= 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(Error::OutOfRange { name, value })
    }
}

pub(crate) fn check_positive(name: &'static str, value: f64) -> Result<f64> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(Error::OutOfRange { name, value })
    }
}
