use thiserror::Error;

/// Errors produced by the algebraic and numeric routines of this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("truncation order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("binomial series requires a zero constant term")]
    NonzeroConstantTerm,

    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    #[error("u-exponent {l} out of range 0..{m}")]
    ExponentOutOfRange { l: usize, m: usize },

    #[error("vanishing divisor in {context}")]
    ZeroDivisor { context: String },

    #[error("invalid Lie algebra: {0}")]
    InvalidAlgebra(String),

    #[error("ring or algebra mismatch: {0}")]
    Mismatch(String),

    #[error("unsupported family for {operation}: {family}")]
    UnsupportedFamily { operation: &'static str, family: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("eigenvalue iteration did not converge after {iterations} sweeps")]
    NoConvergence { iterations: usize },

    #[error("adaptive quadrature exhausted {budget} subintervals (error estimate {estimate:e})")]
    QuadratureBudget { budget: usize, estimate: f64 },

    #[error("point outside domain: {0}")]
    Domain(String),

    #[error("series tail bound {bound:e} exceeds tolerance {tolerance:e} at order {order}")]
    TailBound { bound: f64, tolerance: f64, order: usize },

    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
}

pub type Result<T> = std::result::Result<T, Error>;
