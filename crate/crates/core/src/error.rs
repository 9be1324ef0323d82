use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("zero denominator in rational function")]
    ZeroDenominator,

    /// An operator output (or a reduced rational function) still has a pole.
    /// For operators transcribed from closed formulas this means a coefficient is wrong.
    #[error("result is not a polynomial: {0}")]
    NotPolynomial(String),

    #[error("degenerate parameters for {family} at n = {n}: {reason}")]
    DegenerateParameters {
        family: &'static str,
        n: usize,
        reason: String,
    },

    #[error("denominator Pochhammer symbol vanishes at k = {k}")]
    DenominatorPochhammerZero { k: usize },

    #[error("first numerator parameter must be a nonpositive integer, got {0}")]
    NonTerminatingSeries(String),

    #[error("{family} has no explicit hypergeometric constructor")]
    NoExplicitForm { family: &'static str },

    #[error("exact division by (x - 1) failed at n = {n}")]
    NotDivisible { n: usize },

    #[error("1 - c^2 = {0} is not the square of a rational; use the float path (tolerance 1e-12)")]
    IrrationalScale(String),

    #[error("operator term cannot act on the Gaussian class: {0}")]
    UnsupportedTermForGaussianClass(String),

    #[error("quadrature rule with {nodes} nodes is exact only to degree {exact}, need {needed}")]
    RuleTooSmall {
        nodes: usize,
        exact: usize,
        needed: usize,
    },

    #[error("tridiagonal eigensolver did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("source recurrence degenerates at step {step} (n = {n})")]
    DegenerateStep { step: f64, n: usize },

    #[error("invalid limit case: {0}")]
    InvalidLimitCase(String),

    #[error("unknown acceptance criterion {0:?}")]
    UnknownCriterion(String),

    #[error("invalid weight parameters: {0}")]
    InvalidWeight(String),

    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),

    #[error("report serialization: {0}")]
    Serialization(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
