//! The catalog of constants the suite verifies, kept as exact expressions
//! evaluated at full f64 precision rather than truncated literals.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

/// Value of the principal-value integral (integral 1) for every alpha > 0.
pub const PI_SQUARED_OVER_SIX: f64 = PI * PI / 6.0;

/// Value of integral 2 for every alpha > 0.
pub const PI_SQUARED_OVER_FOUR: f64 = PI * PI / 4.0;

/// E[sgn(X1) sgn(X2)] for the shared-term pair, any sampler-valid alpha.
pub const PAIR_SIGN_MOMENT: f64 = 1.0 / 3.0;

/// P[sgn(X1) = sgn(X2) = 1].
pub const PAIR_ORTHANT: f64 = 1.0 / 3.0;

/// E[sgn(X1) sgn(S)].
pub const X1_S_SIGN_MOMENT: f64 = 0.5;

/// P[sgn(X1) = sgn(S) = 1].
pub const X1_S_ORTHANT: f64 = 3.0 / 8.0;

/// E[sgn(X1 X2 ... Xn)]: zero for odd n, 1/(n+1) for even n.
pub fn n_product_moment(n: u32) -> f64 {
    if n % 2 == 1 {
        0.0
    } else {
        1.0 / f64::from(n + 1)
    }
}

/// Independent Gaussian-case anchor for the pair moment: at alpha = 2 the
/// pair (X1, X2) is bivariate normal with correlation 1/2, so the sign
/// moment is (2/pi) arcsin(1/2) = 1/3 by the orthant formula.
pub fn gaussian_pair_anchor() -> f64 {
    2.0 / PI * 0.5f64.asin()
}

/// Gaussian-case anchor for the X1-S moment: correlation 1/sqrt(2), giving
/// (2/pi) arcsin(1/sqrt(2)) = 1/2.
pub fn gaussian_x1_s_anchor() -> f64 {
    2.0 / PI * FRAC_1_SQRT_2.asin()
}

/// Exponent grid for the quadrature alpha-independence checks.
pub const QUADRATURE_ALPHA_GRID: [f64; 12] = [
    0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 1.9, 2.0, 2.5, 3.0, 4.0,
];

/// Exponent grid for the Monte Carlo sign-moment checks.
pub const MC_ALPHA_GRID: [f64; 4] = [0.5, 1.0, 1.5, 1.9];

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gaussian_anchors_collapse_to_the_shared_targets() {
        // arcsin(1/2) = pi/6 and arcsin(1/sqrt 2) = pi/4 make these exact.
        assert_relative_eq!(gaussian_pair_anchor(), PAIR_SIGN_MOMENT, epsilon = 1e-15);
        assert_relative_eq!(gaussian_x1_s_anchor(), X1_S_SIGN_MOMENT, epsilon = 1e-15);
    }

    #[test]
    fn n_product_targets() {
        assert_eq!(n_product_moment(2), 1.0 / 3.0);
        assert_eq!(n_product_moment(4), 0.2);
        assert_eq!(n_product_moment(3), 0.0);
        assert_eq!(n_product_moment(5), 0.0);
    }
}
