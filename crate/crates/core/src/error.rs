use core::fmt;

use crate::constraints::Family;

/// Errors raised by the core library.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Error {
    /// Finite-difference step must be strictly positive and finite.
    InvalidStep(f64),
    /// Tolerances must be strictly positive and finite.
    InvalidTolerance(f64),
    /// `κ` normalization must be strictly positive.
    InvalidNormalization(f64),
    /// The family constructors are only defined for `g ≠ 0`.
    ZeroCoupling,
    /// Families I and II need a non-zero wavenumber.
    ZeroWavenumber,
    /// Family II with `α₄ = 0` collapses onto the vacuum.
    ZeroAmplitude,
    /// Time averages need `ω ≠ 0`.
    ZeroFrequency,
    /// Sign parameters must be exactly `±1`.
    InvalidSign(f64),
    /// Parameters or coordinates must be finite.
    NonFinite,
    /// Too few quadrature or sampling points.
    TooFewSamples { got: usize, need: usize },
    /// The requested quantity is not defined for this family.
    UnsupportedFamily(Family),
    /// The phase does not vary (`k = ω = 0`), so harmonic fits are impossible.
    DegenerateGrid,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidStep(h) => write!(f, "finite-difference step must be positive, got {h}"),
            Error::InvalidTolerance(t) => write!(f, "tolerance must be positive, got {t}"),
            Error::InvalidNormalization(k) => write!(f, "normalization must be positive, got {k}"),
            Error::ZeroCoupling => write!(f, "coupling g must be non-zero"),
            Error::ZeroWavenumber => write!(f, "wavenumber k must be non-zero"),
            Error::ZeroAmplitude => write!(f, "amplitude alpha4 must be non-zero"),
            Error::ZeroFrequency => write!(f, "frequency omega must be non-zero"),
            Error::InvalidSign(s) => write!(f, "sign parameter must be +1 or -1, got {s}"),
            Error::NonFinite => write!(f, "non-finite parameter or coordinate"),
            Error::TooFewSamples { got, need } => {
                write!(f, "need at least {need} samples, got {got}")
            }
            Error::UnsupportedFamily(family) => {
                write!(f, "operation not defined for family {family}")
            }
            Error::DegenerateGrid => write!(
                f,
                "phase is constant (k = omega = 0); sampling grid is degenerate"
            ),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn check_step(h: f64) -> Result<()> {
    if h.is_finite() && h > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidStep(h))
    }
}

pub(crate) fn check_tol(tol: f64) -> Result<()> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidTolerance(tol))
    }
}
