use thiserror::Error;

/// Errors raised anywhere in the numeric and symbolic pipelines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("Gamma has a pole at z = {re} + {im}i")]
    GammaPole { re: f64, im: f64 },

    #[error("{function} has a pole at s = {re} + {im}i")]
    Pole { function: String, re: f64, im: f64 },

    #[error("non-finite value produced by {0}")]
    NonFinite(&'static str),

    #[error("phase step too coarse near t = {t}: raw argument jumped by {jump}")]
    StepTooCoarse { t: f64, jump: f64 },

    #[error("total phase Z(t) crossed {target} downward on [{t0}, {t1}]")]
    MonotonicityViolation { t0: f64, t1: f64, target: f64 },

    #[error("Maass-Selberg exponent {index} vanishes; use truncated_norm_sq for the diagonal")]
    DegenerateExponent { index: usize },

    #[error("Richardson extrapolation is unstable: successive estimates differ by {spread}")]
    ExtrapolationUnstable { spread: f64 },

    #[error("height adjustment exhausted after {retries} retries (last a = {a})")]
    AdjustmentExhausted { retries: usize, a: f64 },

    #[error("tau = {tau} is within {distance} of the constant-term zero t_{index}")]
    TooCloseToPole { tau: f64, index: usize, distance: f64 },

    #[error("no sign change of theta_v on bracket ({lo}, {hi}) (index {index})")]
    NoSignChange { index: usize, lo: f64, hi: f64 },

    #[error("Rankin-Selberg specialization mismatch: {0}")]
    SpecializationMismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors that falsify one of the mathematical invariants the
    /// pipeline is built to exhibit (as opposed to bad input).
    pub fn is_invariant_violation(&self) -> bool {
        matches!(
            self,
            Error::NoSignChange { .. } | Error::MonotonicityViolation { .. } | Error::SpecializationMismatch(_)
        )
    }
}
