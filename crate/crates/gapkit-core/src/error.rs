use alloc::string::String;
use core::fmt;

/// Errors produced by the numerical core.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A gap set violated the required ordering/positivity invariants.
    InvalidGapSet(String),
    /// A divisor entry is outside its closed gap or malformed.
    InvalidDivisor(String),
    /// An adaptive quadrature did not reach the requested tolerance.
    QuadratureNoConvergence {
        /// Error estimate at the largest node count tried.
        estimate: f64,
        /// Requested tolerance.
        tolerance: f64,
    },
    /// A linear system was numerically singular.
    SingularSystem(String),
    /// Newton iteration failed (step underflow or residual stall).
    NewtonFailure(String),
    /// An evaluation point is too close to a pole or branch point.
    NearSingularity(String),
    /// Root bracketing failed where a root was guaranteed.
    BracketFailure(String),
    /// Exact integer arithmetic overflowed `i128`.
    Overflow(String),
    /// A parameter is outside its admissible range.
    InvalidParameter(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidGapSet(m) => write!(f, "invalid gap set: {m}"),
            Error::InvalidDivisor(m) => write!(f, "invalid divisor: {m}"),
            Error::QuadratureNoConvergence { estimate, tolerance } => write!(
                f,
                "quadrature did not converge: estimate {estimate:e} > tolerance {tolerance:e}"
            ),
            Error::SingularSystem(m) => write!(f, "singular linear system: {m}"),
            Error::NewtonFailure(m) => write!(f, "newton iteration failed: {m}"),
            Error::NearSingularity(m) => write!(f, "evaluation too close to a singularity: {m}"),
            Error::BracketFailure(m) => write!(f, "root bracketing failed: {m}"),
            Error::Overflow(m) => write!(f, "exact arithmetic overflow: {m}"),
            Error::InvalidParameter(m) => write!(f, "invalid parameter: {m}"),
        }
    }
}

impl core::error::Error for Error {}
