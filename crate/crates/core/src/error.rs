use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Argument sits on a pole of the function being evaluated.
    Pole {
        re: f64,
        im: f64,
    },
    /// A parameter is outside the set where the function is defined.
    Parameter(&'static str),
    /// An input lies outside the physical domain of an operation.
    Domain(&'static str),
    /// An iterative expansion did not converge within its iteration cap.
    Convergence {
        what: &'static str,
        iterations: usize,
    },
    InvalidInterval {
        lo: f64,
        hi: f64,
    },
    /// A computation produced NaN or an infinity.
    NonFinite(&'static str),
    /// The Fock cutoff leaves more than the allowed probability mass outside.
    CutoffTooSmall {
        cutoff: usize,
        tail: f64,
    },
    DimensionTooLarge {
        dimension: usize,
        limit: usize,
    },
    NormDriftExceeded {
        time: f64,
        drift: f64,
    },
    /// The maximum of a sweep lies on the first or last grid point.
    PeakOutsideGrid {
        index: usize,
    },
    /// Two sequences that must share a length do not.
    LengthMismatch {
        expected: usize,
        found: usize,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Pole { re, im } => write!(f, "argument {re}{im:+}i is a pole"),
            Error::Parameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::Domain(msg) => write!(f, "outside domain: {msg}"),
            Error::Convergence { what, iterations } => {
                write!(f, "{what} did not converge after {iterations} iterations")
            }
            Error::InvalidInterval { lo, hi } => {
                write!(f, "invalid integration interval [{lo}, {hi}]")
            }
            Error::NonFinite(what) => write!(f, "non-finite value in {what}"),
            Error::CutoffTooSmall { cutoff, tail } => write!(
                f,
                "Fock cutoff {cutoff} leaves probability mass {tail:.3e} outside the distribution"
            ),
            Error::DimensionTooLarge { dimension, limit } => {
                write!(
                    f,
                    "Hilbert space dimension {dimension} exceeds limit {limit}"
                )
            }
            Error::NormDriftExceeded { time, drift } => {
                write!(f, "state norm drifted by {drift:.3e} at t = {time}")
            }
            Error::PeakOutsideGrid { index } => {
                write!(f, "sweep maximum at grid edge (index {index})")
            }
            Error::LengthMismatch { expected, found } => {
                write!(
                    f,
                    "sequence length {found} does not match axis length {expected}"
                )
            }
        }
    }
}

impl core::error::Error for Error {}
