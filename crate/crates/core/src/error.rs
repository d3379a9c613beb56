use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the documented domain of a function.
    #[error("domain error in {func}: {detail}")]
    Domain { func: &'static str, detail: String },

    /// A hypergeometric-type denominator vanishes before the series terminates.
    #[error("vanishing denominator in {func}: {detail}")]
    VanishingDenominator { func: &'static str, detail: String },

    #[error("series in {func} did not converge after {terms} terms")]
    NonConvergence { func: &'static str, terms: usize },

    /// Polynomial length would exceed the configured degree cap.
    #[error("polynomial degree {degree} exceeds cap {cap}")]
    CapExceeded { degree: usize, cap: usize },

    /// A rational function of the Euler operator has a pole at this degree.
    #[error("rational Euler-operator factor is singular on x^{degree}")]
    SingularRational { degree: usize },

    #[error("indicial condition F(D) x^{alpha} = 0 fails (residual {residual:e})")]
    Indicial { alpha: usize, residual: f64 },

    #[error("operator is not degree-lowering; exponential series does not terminate")]
    NonTerminating,

    #[error("expected the monomial x^{expected}")]
    NotMonomial { expected: usize },

    #[error("truncation at N = {n_max} is inadequate: |c_N|^2 / max |c_n|^2 = {ratio:e}")]
    Truncation { n_max: usize, ratio: f64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("basis mismatch: {0}")]
    BasisMismatch(String),

    #[error("norm drift {drift:e} at time index {index} exceeds tolerance")]
    NormDrift { index: usize, drift: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    pub(crate) fn domain(func: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            func,
            detail: detail.into(),
        }
    }
}
