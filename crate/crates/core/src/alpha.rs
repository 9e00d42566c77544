//! The stability exponent, with its two validity domains.

use crate::error::{Error, Result};

/// Smallest exponent the sampler accepts. Below this, `2^{1/alpha}` and the
/// powers inside the Chambers-Mallows-Stuck transform overflow f64 long
/// before any statistic needs them.
pub const SAMPLER_ALPHA_FLOOR: f64 = 0.05;

/// Stability exponent of a symmetric stable law.
///
/// Construction accepts any finite value > 0 (the quadrature domain).
/// Sampling operations additionally require
/// `SAMPLER_ALPHA_FLOOR <= value <= 2`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Alpha(f64);

impl Alpha {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && value > 0.0 {
            Ok(Alpha(value))
        } else {
            Err(Error::InvalidAlpha(value))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    /// True when the stable sampler accepts this exponent.
    pub fn is_sampler_valid(self) -> bool {
        (SAMPLER_ALPHA_FLOOR..=2.0).contains(&self.0)
    }

    pub fn require_sampler_valid(self) -> Result<Self> {
        if self.is_sampler_valid() {
            Ok(self)
        } else {
            Err(Error::AlphaNotSamplerValid(self.0))
        }
    }

    /// The scale factor `2^{1/alpha}` of the shared-term construction.
    pub fn two_pow_inv(self) -> f64 {
        (1.0 / self.0).exp2()
    }
}

impl std::fmt::Display for Alpha {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_any_positive_finite_value() {
        assert!(Alpha::new(0.01).is_ok());
        assert!(Alpha::new(1.0).is_ok());
        assert!(Alpha::new(1000.0).is_ok());
    }

    #[test]
    fn rejects_nonpositive_and_nonfinite() {
        assert_eq!(Alpha::new(0.0), Err(Error::InvalidAlpha(0.0)));
        assert!(Alpha::new(-1.0).is_err());
        assert!(Alpha::new(f64::NAN).is_err());
        assert!(Alpha::new(f64::INFINITY).is_err());
    }

    #[test]
    fn sampler_domain_is_a_strict_subset() {
        assert!(!Alpha::new(0.01).unwrap().is_sampler_valid());
        assert!(Alpha::new(SAMPLER_ALPHA_FLOOR).unwrap().is_sampler_valid());
        assert!(Alpha::new(2.0).unwrap().is_sampler_valid());
        assert!(!Alpha::new(2.0 + 1e-12).unwrap().is_sampler_valid());
        assert!(Alpha::new(3.0).unwrap().require_sampler_valid().is_err());
    }

    #[test]
    fn scale_factor() {
        assert_eq!(Alpha::new(1.0).unwrap().two_pow_inv(), 2.0);
        assert_eq!(Alpha::new(2.0).unwrap().two_pow_inv(), 2f64.sqrt());
        assert_eq!(Alpha::new(0.5).unwrap().two_pow_inv(), 4.0);
    }
}
