//! The two log-ratio integrands on (0, pi), their singularity catalogs, and
//! the fold transform that renders the principal-value integrand proper.
//!
//! Integrand 1:  log(|cos t|^a + |sin t|^a + |cos t + sin t|^a) / (a cos t sin t)
//! Integrand 2:  log(|sin t|^a / 2 + |cos t + 2^(-1/a) sin t|^a) / (a cos t sin t)
//!
//! The first has simple poles at 0, pi/2, pi and is integrated in the
//! principal-value sense; the second is absolutely integrable, with
//! removable or integrable endpoints and a |.|^a kink where its second
//! term vanishes.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};

/// Which of the two integrands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntegrandId {
    I1,
    I2,
}

/// Classified special angles of an integrand for a given exponent.
///
/// All angles lie in [0, pi]; each list is sorted and duplicate-free.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularityCatalog {
    /// Simple poles requiring principal-value pairing.
    pub pv_poles: Vec<f64>,
    /// Points where the integrand extends continuously (or stays
    /// integrable) but the closed form is 0/0.
    pub removable_points: Vec<f64>,
    /// Interior points where the log argument loses smoothness.
    pub log_points: Vec<f64>,
    /// Kinks of |.|^alpha terms.
    pub kink_points: Vec<f64>,
}

/// `log(sum_i c_i |t_i|^alpha)` with the largest |t_i| factored out, so the
/// expression survives exponents far beyond the f64 overflow of a naive
/// `powf` sum.
fn power_sum_log(terms: &[(f64, f64)], alpha: f64) -> f64 {
    let m = terms
        .iter()
        .map(|&(_, t)| t.abs())
        .fold(0.0f64, f64::max);
    let sum: f64 = terms
        .iter()
        .map(|&(coeff, t)| coeff * (t.abs() / m).powf(alpha))
        .sum();
    alpha * m.ln() + sum.ln()
}

#[inline]
fn denominator(alpha: f64, theta: f64) -> f64 {
    alpha * theta.cos() * theta.sin()
}

fn check_domain(alpha: f64, theta: f64) -> Result<()> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(Error::InvalidAlpha(alpha));
    }
    if !(theta > 0.0 && theta < PI) || theta == FRAC_PI_2 {
        return Err(Error::IntegrandDomain { theta });
    }
    Ok(())
}

/// First integrand. Defined for `theta` in (0, pi) away from {pi/2}.
pub fn integrand1(alpha: f64, theta: f64) -> Result<f64> {
    check_domain(alpha, theta)?;
    Ok(integrand1_raw(alpha, theta))
}

pub(crate) fn integrand1_raw(alpha: f64, theta: f64) -> f64 {
    let c = theta.cos();
    let s = theta.sin();
    power_sum_log(&[(1.0, c), (1.0, s), (1.0, c + s)], alpha) / (alpha * c * s)
}

/// Second integrand. Defined on (0, pi) away from {pi/2, theta_star};
/// the excluded points have finite or one-signed limits, see
/// [`integrand2_limit`].
pub fn integrand2(alpha: f64, theta: f64) -> Result<f64> {
    check_domain(alpha, theta)?;
    if theta == theta_star(alpha) {
        return Err(Error::IntegrandDomain { theta });
    }
    Ok(integrand2_raw(alpha, theta))
}

pub(crate) fn integrand2_raw(alpha: f64, theta: f64) -> f64 {
    let c = theta.cos();
    let s = theta.sin();
    let shifted = c + (-1.0 / alpha).exp2() * s;
    power_sum_log(&[(0.5, s), (1.0, shifted)], alpha) / (alpha * c * s)
}

/// Two-sided limit of integrand 2 at one of the removable angles
/// {0, pi/2, pi} (exact values required).
///
/// At pi/2 the limit is `2^(1/alpha - 1)` for every alpha. At 0 and pi it
/// is `2^(-1/alpha)` for alpha > 1; for alpha = 1 the limits are 1 and 0;
/// for alpha < 1 the integrand diverges (integrably) to +inf at 0 and
/// -inf at pi, and the signed infinity is returned.
pub fn integrand2_limit(alpha: f64, theta: f64) -> Result<f64> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(Error::InvalidAlpha(alpha));
    }
    let at_zero = |sign: f64| -> f64 {
        if alpha > 1.0 {
            (-1.0 / alpha).exp2()
        } else if alpha == 1.0 {
            // 2^(-1/a) +- 1/(2a) degenerates to 1/2 +- 1/2.
            0.5 + sign * 0.5
        } else {
            sign * f64::INFINITY
        }
    };
    if theta == 0.0 {
        Ok(at_zero(1.0))
    } else if theta == FRAC_PI_2 {
        Ok((1.0 / alpha - 1.0).exp2())
    } else if theta == PI {
        Ok(at_zero(-1.0))
    } else {
        Err(Error::IntegrandDomain { theta })
    }
}

/// The interior kink of integrand 2: the unique root of
/// `cos t + 2^(-1/alpha) sin t` on (0, pi), in closed form.
pub fn theta_star(alpha: f64) -> f64 {
    PI - (1.0 / alpha).exp2().atan()
}

/// Catalog the special angles of an integrand for the given exponent.
pub fn classify_singularities(id: IntegrandId, alpha: f64) -> SingularityCatalog {
    assert!(alpha.is_finite() && alpha > 0.0, "alpha must be positive");
    match id {
        IntegrandId::I1 => SingularityCatalog {
            pv_poles: vec![0.0, FRAC_PI_2, PI],
            removable_points: vec![],
            log_points: vec![],
            // cos t + sin t vanishes at 3pi/4; a genuine kink only for
            // alpha < 1, but always a breakpoint.
            kink_points: vec![0.75 * PI],
        },
        IntegrandId::I2 => SingularityCatalog {
            pv_poles: vec![],
            removable_points: vec![0.0, FRAC_PI_2, PI],
            log_points: vec![theta_star(alpha)],
            kink_points: vec![],
        },
    }
}

/// The fold `g(t) = f1(t) + f1(pi - t)` of integrand 1, for t in (0, pi/2).
///
/// Pairing t with pi - t cancels all three simple poles at once: the
/// principal value of integrand 1 over (0, pi) equals the proper integral
/// of `g` over (0, pi/2), and `g -> 1` at both endpoints. Evaluated via
/// `ln_1p` of a ratio so the cancellation happens analytically instead of
/// between two large floats.
pub(crate) fn fold_integrand1(alpha: f64, theta: f64) -> f64 {
    let c = theta.cos();
    let s = theta.sin();
    // g = [N+ - N-] / (alpha c s) with N+- = log(c^a + s^a + |c +- s|^a).
    // The direct ln_1p form overflows once (c+s)^alpha leaves f64 range,
    // so huge exponents switch to the factored form.
    if alpha <= 500.0 {
        fold_direct(alpha, c, s)
    } else {
        fold_factored(alpha, c, s)
    }
}

fn fold_direct(alpha: f64, c: f64, s: f64) -> f64 {
    let a_ = c.powf(alpha);
    let b_ = s.powf(alpha);
    let cp = (c + s).powf(alpha);
    let cm = (c - s).abs().powf(alpha);
    ((cp - cm) / (a_ + b_ + cm)).ln_1p() / (alpha * c * s)
}

// Exponent-scale form: c + s dominates N+, max(c, s) dominates N-.
fn fold_factored(alpha: f64, c: f64, s: f64) -> f64 {
    let m = c.max(s);
    let lead = alpha * ((c + s) / m).ln();
    let plus = (1.0 + (c / (c + s)).powf(alpha) + (s / (c + s)).powf(alpha)).ln();
    let minus =
        ((c / m).powf(alpha) + (s / m).powf(alpha) + ((c - s).abs() / m).powf(alpha)).ln();
    (lead + plus - minus) / (alpha * c * s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn integrand1_hand_values() {
        // At theta = pi/4: all three powers collapse to powers of sqrt(2).
        assert_relative_eq!(
            integrand1(1.0, PI / 4.0).unwrap(),
            8f64.ln(),
            epsilon = 1e-12
        );
        assert_relative_eq!(
            integrand1(2.0, PI / 4.0).unwrap(),
            3f64.ln(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn integrand2_hand_value() {
        assert_relative_eq!(
            integrand2(1.0, PI / 4.0).unwrap(),
            2f64.ln(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn excluded_angles_are_domain_errors() {
        for theta in [0.0, FRAC_PI_2, PI, -0.3, 3.5] {
            assert!(matches!(
                integrand1(1.0, theta),
                Err(Error::IntegrandDomain { .. })
            ));
            assert!(matches!(
                integrand2(1.0, theta),
                Err(Error::IntegrandDomain { .. })
            ));
        }
        assert!(integrand1(0.0, 1.0).is_err());
        assert!(integrand1(-2.0, 1.0).is_err());
        assert!(integrand2(1.0, theta_star(1.0)).is_err());
        // Interior non-special angles are fine.
        assert!(integrand1(1.0, 1.0).is_ok());
        assert!(integrand2(1.0, 1.0).is_ok());
    }

    #[test]
    fn integrand2_limits_match_two_sided_evaluation() {
        for alpha in [0.7, 1.0, 1.3, 2.0] {
            let lim = integrand2_limit(alpha, FRAC_PI_2).unwrap();
            let left = integrand2(alpha, FRAC_PI_2 - 1e-6).unwrap();
            let right = integrand2(alpha, FRAC_PI_2 + 1e-6).unwrap();
            assert_relative_eq!(lim, (1.0f64 / alpha - 1.0).exp2(), epsilon = 1e-12);
            assert!((left - lim).abs() < 1e-4, "alpha {alpha}: left {left} vs {lim}");
            assert!((right - lim).abs() < 1e-4);
        }
        // alpha = 1 endpoints: expansion gives 1 at 0+ and 0 at pi-.
        assert_eq!(integrand2_limit(1.0, 0.0).unwrap(), 1.0);
        assert_eq!(integrand2_limit(1.0, PI).unwrap(), 0.0);
        assert!((integrand2(1.0, 1e-6).unwrap() - 1.0).abs() < 1e-4);
        assert!(integrand2(1.0, PI - 1e-6).unwrap().abs() < 1e-4);
        // alpha > 1 endpoints share the value 2^(-1/alpha).
        assert_relative_eq!(integrand2_limit(2.0, 0.0).unwrap(), 0.5f64.sqrt());
        assert!((integrand2(2.0, 1e-7).unwrap() - 0.5f64.sqrt()).abs() < 1e-5);
        // alpha < 1: integrable divergence, signed.
        assert_eq!(integrand2_limit(0.5, 0.0).unwrap(), f64::INFINITY);
        assert_eq!(integrand2_limit(0.5, PI).unwrap(), f64::NEG_INFINITY);
        assert!(integrand2(0.5, 1e-9).unwrap() > 1e3);
        assert!(integrand2(0.5, PI - 1e-9).unwrap() < -1e3);
    }

    #[test]
    fn catalog_matches_the_closed_forms() {
        let c1 = classify_singularities(IntegrandId::I1, 0.5);
        assert_eq!(c1.pv_poles, vec![0.0, FRAC_PI_2, PI]);
        assert_eq!(c1.kink_points, vec![0.75 * PI]);
        assert!(c1.removable_points.is_empty() && c1.log_points.is_empty());
        // cos + sin really vanishes at the listed kink.
        let k = c1.kink_points[0];
        assert!((k.cos() + k.sin()).abs() < 1e-15);

        let c2 = classify_singularities(IntegrandId::I2, 1.0);
        assert!(c2.pv_poles.is_empty());
        assert_eq!(c2.removable_points, vec![0.0, FRAC_PI_2, PI]);
        assert_relative_eq!(c2.log_points[0], PI - 2f64.atan(), epsilon = 1e-15);
        assert_relative_eq!(c2.log_points[0], 2.034_443_935_795_703, epsilon = 1e-12);
        // The listed point is the root of cos t + 2^(-1/a) sin t.
        for alpha in [0.25, 1.0, 3.0] {
            let t = theta_star(alpha);
            assert!(t > FRAC_PI_2 && t < PI);
            assert!((t.cos() + (-1.0f64 / alpha).exp2() * t.sin()).abs() < 1e-15);
            let cat = classify_singularities(IntegrandId::I2, alpha);
            assert!(cat.pv_poles.is_empty());
        }
    }

    #[test]
    fn catalog_lists_are_sorted_and_in_range() {
        for alpha in [0.3, 1.0, 4.0] {
            for id in [IntegrandId::I1, IntegrandId::I2] {
                let cat = classify_singularities(id, alpha);
                for list in [
                    &cat.pv_poles,
                    &cat.removable_points,
                    &cat.log_points,
                    &cat.kink_points,
                ] {
                    assert!(list.windows(2).all(|w| w[0] < w[1]));
                    assert!(list.iter().all(|&t| (0.0..=PI).contains(&t)));
                }
            }
        }
    }

    #[test]
    fn fold_cancels_the_endpoint_poles() {
        // f1(t) + f1(pi - t) stays bounded and converges to 1 as t -> 0+.
        for alpha in [0.5, 1.0, 2.0] {
            let devs: Vec<f64> = [1e-3, 1e-4, 1e-5]
                .iter()
                .map(|&t| (fold_integrand1(alpha, t) - 1.0).abs())
                .collect();
            assert!(devs[0] < 0.1, "alpha {alpha}: {devs:?}");
            assert!(devs[1] < devs[0] && devs[2] < devs[1], "alpha {alpha}: {devs:?}");
        }
    }

    #[test]
    fn fold_agrees_with_the_raw_sum_away_from_poles() {
        for alpha in [0.25, 1.0, 1.9, 4.0] {
            for theta in [0.3, 0.7, 1.1, 1.4] {
                let raw = integrand1_raw(alpha, theta) + integrand1_raw(alpha, PI - theta);
                let fold = fold_integrand1(alpha, theta);
                assert_relative_eq!(raw, fold, epsilon = 1e-9, max_relative = 1e-9);
            }
        }
    }

    #[test]
    fn factored_log_survives_huge_exponents() {
        // Naive powf sums overflow near alpha ~ 2000; the factored form and
        // the large-alpha fold branch must stay finite and consistent.
        let v = integrand1(3000.0, 1.0).unwrap();
        assert!(v.is_finite());
        let g = fold_integrand1(3000.0, 0.9);
        assert!(g.is_finite());
        // The two fold branches agree wherever both are representable.
        for alpha in [1.0, 50.0, 400.0] {
            for theta in [0.2, 0.9, 1.4] {
                let (c, s) = (theta.cos(), theta.sin());
                assert_relative_eq!(
                    fold_direct(alpha, c, s),
                    fold_factored(alpha, c, s),
                    epsilon = 1e-12,
                    max_relative = 1e-9
                );
            }
        }
    }
}
