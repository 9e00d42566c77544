//! Cross-verification of the sign statistics of symmetric stable vectors.
//!
//! Three mutually independent computational routes target the same small
//! catalog of constants:
//!
//! * singular quadrature of two log-ratio integrals over (0, pi), whose
//!   values pi^2/6 and pi^2/4 do not depend on the stability exponent;
//! * Monte Carlo estimation of sign moments of the shared-term vectors
//!   `X_i = (S + S_i) / 2^{1/alpha}` (pair moment 1/3, X1-S moment 1/2,
//!   orthant probabilities 1/3 and 3/8, n-fold product 1/(n+1));
//! * exact rational recursion for the all-even-blocks probability of the
//!   geometric paintbox (1/2, 1/4, 1/8, ...), plus its simulation.
//!
//! Agreement across routes is the product: every module feeds the
//! acceptance suite and the `stable-signs` command-line report.

pub mod alpha;
pub mod dac;
pub mod error;
pub mod paintbox;
pub mod quadrature;
pub mod rng;
pub mod sampler;
pub mod sign_mc;
pub mod targets;

pub use alpha::Alpha;
pub use error::{Error, Result};
pub use rng::{derive_seed, RngStream, CHUNK_TRIALS};
pub use sampler::{empirical_cf, empirical_cf_sine, sample_sas, sample_threshold_vector, ThresholdVector};
pub use sign_mc::{McEstimate, SignVectorPmf};
