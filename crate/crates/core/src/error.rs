use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised across the construction, certification and query paths.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("square root of a negative number")]
    NegativeSqrt,
    #[error("invalid order n = {0}")]
    InvalidN(usize),
    #[error("precision {0} is below the minimum of {min} bits", min = crate::precision::MIN_PRECISION)]
    InvalidPrecision(u32),
    #[error("target c must be nonzero")]
    ZeroTarget,
    #[error("no convergence for n = {n}: {reason}")]
    NoConvergence { n: usize, reason: String },
    #[error("two roots are equally close to 1 within the tie tolerance")]
    AmbiguousMinimizer,
    #[error("no root with positive imaginary part")]
    NoUpperRoot,
    #[error("selected root {re} + {im}i is not strictly inside the first quadrant")]
    NotInFirstQuadrant { re: String, im: String },
    #[error("argument {value} outside the domain [{lo}, {hi}]")]
    DomainViolation { value: String, lo: String, hi: String },
    #[error("descent sequence stopped decreasing at step {step}")]
    NonDescent { step: usize },
    #[error("descent sequence did not leave the domain within {0} steps")]
    StepLimit(usize),
    #[error("certificate checks failed: {}", failed.join(", "))]
    CertificateFailure {
        failed: Vec<String>,
        certificate: Box<crate::phi::ZetaCertificate>,
    },
    #[error("value is not an n-th root of unity for n = {0}")]
    NotARoot(usize),
    #[error("{0} is not prime")]
    NotPrime(usize),
    #[error("cannot parse decimal {0:?}")]
    Parse(String),
}

impl Error {
    /// Domain errors are caller mistakes; everything else is a numerical failure.
    pub fn is_domain_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidN(_)
                | Error::InvalidPrecision(_)
                | Error::ZeroTarget
                | Error::NotARoot(_)
                | Error::NotPrime(_)
                | Error::Parse(_)
                | Error::DivisionByZero
                | Error::NegativeSqrt
        )
    }
}
