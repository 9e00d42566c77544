use thiserror::Error;

/// Errors shared across the estimation and quadrature modules.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("alpha must be a finite positive real, got {0}")]
    InvalidAlpha(f64),

    #[error("alpha {0} is outside the sampler range [{floor}, 2]", floor = crate::alpha::SAMPLER_ALPHA_FLOOR)]
    AlphaNotSamplerValid(f64),

    #[error("integrand is undefined at theta = {theta}")]
    IntegrandDomain { theta: f64 },

    #[error("tolerance {0:e} is below the supported floor of 1e-10")]
    ToleranceTooTight(f64),

    #[error(
        "quadrature did not converge: error estimate {achieved:e} > tol {tol:e} after {panels} panels"
    )]
    NonConvergence { achieved: f64, tol: f64, panels: usize },

    #[error(
        "principal-value schemes disagree: fold {fold}, excision {excision}, |diff| {diff:e} > {limit:e}"
    )]
    SchemeDisagreement { fold: f64, excision: f64, diff: f64, limit: f64 },

    #[error("Monte Carlo estimators require at least {min} trials, got {got}")]
    TooFewTrials { got: u64, min: u64 },

    #[error("n must lie in 1..={max}, got {got}")]
    InvalidN { got: u32, max: u32 },

    #[error("partition weights must lie in [0,1] and sum to 1, got ({0}, {1})")]
    InvalidWeights(f64, f64),

    #[error("probabilities must sum to 1 within 1e-12, got {0}")]
    PmfNotNormalized(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
