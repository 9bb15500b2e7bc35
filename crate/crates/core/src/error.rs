use thiserror::Error;

/// Errors raised by the spectral routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("direction vector n must have unit norm, got |n| = {norm}")]
    NonUnitDirection { norm: f64 },

    #[error("{name} = {value} is outside [{lo}, {hi}]")]
    AngleOutOfRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("non-finite input: {0}")]
    NonFinite(&'static str),

    #[error("interval length must be positive, got {0}")]
    InvalidLength(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("boundary condition is outside the strongly consistent set and is not the Von Neumann-Krein extension")]
    Unsupported,

    #[error("{op} does not apply to this boundary condition: {hint}")]
    WrongFamily { op: &'static str, hint: &'static str },

    #[error("requested order {requested} exceeds the supported maximum {cap}")]
    OrderTooLarge { requested: f64, cap: f64 },

    #[error("root audit failed: argument principle counts {expected} zeros but {found} were located ({detail})")]
    AuditFailed {
        expected: i64,
        found: i64,
        detail: String,
    },

    #[error("eigenvalue at k = {k} has multiplicity {multiplicity}, above the ODE bound of 2")]
    MultiplicityExceeded { k: f64, multiplicity: i64 },

    #[error("spectrum truncated too early for t = {t}: need k_max >= {required_k_max}")]
    TruncationTooShort { t: f64, required_k_max: f64 },

    #[error("zeta sum diverges at s = {re} + {im}i (needs Re s > 1/2)")]
    DivergentSum { re: f64, im: f64 },

    #[error("s is within {distance} of the pole at s = {pole}")]
    PoleProximity { pole: f64, distance: f64 },

    #[error("Re s = {re} is outside the continuation window Re s > {bound}")]
    OutsideWindow { re: f64, bound: f64 },

    #[error("quadrature did not converge: error estimate {estimate:e} above tolerance {tolerance:e}")]
    QuadratureFailure { estimate: f64, tolerance: f64 },

    #[error("determinant argument vanishes (zeta'(0) would be infinite)")]
    DegenerateDeterminant,
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for failures of the numerics themselves (audits, quadrature)
    /// as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::AuditFailed { .. }
                | Error::MultiplicityExceeded { .. }
                | Error::QuadratureFailure { .. }
        )
    }
}
