use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma function pole at z = {re} + {im}i")]
    GammaPole { re: f64, im: f64 },

    #[error("overflow: {0}")]
    Overflow(&'static str),

    #[error("hypergeometric lower parameter c = {re} + {im}i is a non-positive integer")]
    ParameterPole { re: f64, im: f64 },

    #[error("series did not converge within {iterations} terms")]
    NonConvergence { iterations: usize },

    #[error("degenerate X1 Jacobi denominator alpha + beta + 2(n-1) = 0 for n = {n}")]
    DegenerateDenominator { n: usize },

    #[error("Jacobi parameters must satisfy beta != alpha (got alpha = beta = {0})")]
    EqualJacobiParams(f64),

    #[error("invalid potential parameters A = {a}, B = {b}: require B > A + 1 > 1")]
    InvalidParams { a: f64, b: f64 },

    #[error("{what} out of domain: {value}")]
    Domain { what: &'static str, value: f64 },

    #[error("state index {nu} out of range 0..={nu_max}")]
    IndexOutOfRange { nu: usize, nu_max: usize },

    #[error("wavenumber k = {k} is at or below the threshold guard k_min = {k_min}")]
    BelowThreshold { k: f64, k_min: f64 },

    #[error("ill-conditioned fit: window holds {samples} samples, need at least 8")]
    IllConditionedFit { samples: usize },

    #[error("matching radii are degenerate (k * dr = {0} is too close to a multiple of pi)")]
    MatchingDegeneracy(f64),

    #[error("connection formula degenerates: a - b = {re} + {im}i is within 1e-8 of an integer")]
    DegenerateConnection { re: f64, im: f64 },

    #[error("invalid radial grid: {0}")]
    InvalidGrid(String),

    #[error("matching radius {r_max} is not asymptotic: |V - A^2| = {tail:e}")]
    TailNotNegligible { r_max: f64, tail: f64 },
}
