//! Evaluation of the two log-ratio integrals over (0, pi) for any
//! exponent alpha > 0.
//!
//! Integral 1 is a Cauchy principal value (simple poles at 0, pi/2, pi);
//! integral 2 is absolutely convergent. The principal value is computed by
//! two independent schemes that must agree before a result is returned:
//!
//! * fold: pairing theta with pi - theta cancels all three poles
//!   analytically, leaving a proper integral over (0, pi/2);
//! * excision: integrate over (eps, pi/2 - eps) and (pi/2 + eps, pi - eps)
//!   for a halving sequence of common eps and Richardson-extrapolate with
//!   the known exponent ladder {j + k alpha}.
//!
//! Panels use an open 31-point Gauss-Kronrod rule, so catalog angles are
//! never evaluated; breakpoints are forced at every catalog point.

mod gk;
mod integrands;

pub use integrands::{
    classify_singularities, integrand1, integrand2, integrand2_limit, theta_star, IntegrandId,
    SingularityCatalog,
};

use std::collections::BinaryHeap;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use crate::error::{Error, Result};
use integrands::{fold_integrand1, integrand1_raw, integrand2_raw};

/// The two principal-value schemes must agree to this absolute tolerance.
pub const SCHEME_AGREEMENT_TOL: f64 = 1e-7;

/// Tightest accepted request tolerance.
pub const MIN_TOL: f64 = 1e-10;

/// Default tolerance used by the command-line front end.
pub const DEFAULT_TOL: f64 = 1e-8;

/// Absolute tolerance for the inner integrals of the excision scheme.
const EXCISION_INNER_TOL: f64 = 1e-12;

/// Largest excision half-width; halved down the ladder from here.
const EXCISION_EPS0: f64 = 0.2;

/// A converged integral with its claimed error bound and diagnostics.
#[derive(Debug, Clone)]
pub struct QuadResult {
    pub value: f64,
    /// Claimed upper bound on |value - true value|; at most the requested
    /// tolerance.
    pub error_estimate: f64,
    /// Total panels evaluated across all sub-integrations.
    pub subdivisions: usize,
    /// Present exactly when a principal-value scheme ran.
    pub excision_diagnostic: Option<ExcisionDiagnostic>,
}

/// Trace of the excision scheme: the common-eps partial integrals and the
/// value they extrapolate to.
#[derive(Debug, Clone)]
pub struct ExcisionDiagnostic {
    pub epsilons: Vec<f64>,
    pub partial_values: Vec<f64>,
    pub extrapolated: f64,
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error && self.a == other.a
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // Max-heap on error; ties broken by position for determinism.
        self.error
            .total_cmp(&other.error)
            .then(self.a.total_cmp(&other.a))
    }
}

/// Globally adaptive Gauss-Kronrod integration over the panels delimited by
/// `breakpoints`. Returns (value, error bound, panels used); errors if the
/// bound cannot be brought under `tol` within `max_panels` panels.
fn adaptive<F: Fn(f64) -> f64>(
    f: &F,
    breakpoints: &[f64],
    tol: f64,
    max_panels: usize,
) -> Result<(f64, f64, usize)> {
    debug_assert!(breakpoints.windows(2).all(|w| w[0] < w[1]));
    let mut heap = BinaryHeap::new();
    let mut frozen: Vec<Panel> = Vec::new();
    let mut total_error = 0.0;
    let mut count = 0usize;

    let mut push = |heap: &mut BinaryHeap<Panel>, a: f64, b: f64| -> f64 {
        let (value, error) = gk::qk31(f, a, b);
        heap.push(Panel { a, b, value, error });
        error
    };

    for w in breakpoints.windows(2) {
        total_error += push(&mut heap, w[0], w[1]);
        count += 1;
    }

    while total_error > 0.5 * tol && count < max_panels {
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Width at the resolution floor; keep its error on the books.
            frozen.push(worst);
            continue;
        }
        total_error -= worst.error;
        total_error += push(&mut heap, worst.a, mid);
        total_error += push(&mut heap, mid, worst.b);
        count += 1;
    }

    // Deterministic final reduction: sum panels in positional order.
    let mut panels: Vec<Panel> = heap.into_vec();
    panels.extend(frozen);
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    let value: f64 = panels.iter().map(|p| p.value).sum();
    let error: f64 = panels.iter().map(|p| p.error).sum();

    if error <= tol {
        Ok((value, error, count))
    } else {
        Err(Error::NonConvergence {
            achieved: error,
            tol,
            panels: count,
        })
    }
}

fn validate(alpha: f64, tol: f64) -> Result<()> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(Error::InvalidAlpha(alpha));
    }
    if !(tol.is_finite() && tol >= MIN_TOL) {
        return Err(Error::ToleranceTooTight(tol));
    }
    Ok(())
}

/// Exponents of the eps-expansion of the excised partial integrals: the
/// omitted neighborhoods contribute powers eps^(j + k alpha).
fn exponent_ladder(alpha: f64) -> Vec<f64> {
    let mut exps = Vec::new();
    for j in 0..=5 {
        for k in 0..=5 {
            let p = f64::from(j) + f64::from(k) * alpha;
            if p > 1e-9 && p <= 3.3 {
                exps.push(p);
            }
        }
    }
    exps.sort_by(f64::total_cmp);
    exps.dedup_by(|a, b| (*a - *b).abs() <= 1e-6);
    exps
}

/// Common-eps excision partial integrals plus their Richardson
/// extrapolation along the known exponent ladder.
fn excision_scheme(alpha: f64) -> Result<(ExcisionDiagnostic, usize)> {
    let exps = exponent_ladder(alpha);
    let levels = exps.len() + 5;
    let f = |t: f64| integrand1_raw(alpha, t);

    let mut epsilons = Vec::with_capacity(levels);
    let mut partials = Vec::with_capacity(levels);
    let mut panels = 0usize;
    for k in 0..levels {
        let eps = EXCISION_EPS0 * 0.5f64.powi(k as i32);
        let (left, _, p1) = adaptive(
            &f,
            &[eps, FRAC_PI_4, FRAC_PI_2 - eps],
            EXCISION_INNER_TOL,
            4000,
        )?;
        let (right, _, p2) = adaptive(
            &f,
            &[FRAC_PI_2 + eps, 0.75 * PI, PI - eps],
            EXCISION_INNER_TOL,
            4000,
        )?;
        epsilons.push(eps);
        partials.push(left + right);
        panels += p1 + p2;
    }

    let mut tableau = partials.clone();
    for &p in &exps {
        if tableau.len() < 2 {
            break;
        }
        let r = (-p).exp2();
        tableau = tableau
            .windows(2)
            .map(|w| (w[1] - r * w[0]) / (1.0 - r))
            .collect();
    }
    let extrapolated = *tableau.last().expect("ladder leaves at least one entry");

    Ok((
        ExcisionDiagnostic {
            epsilons,
            partial_values: partials,
            extrapolated,
        },
        panels,
    ))
}

/// Principal value of integral 1 at the given exponent.
///
/// Runs both schemes; the fold value is returned, and the excision
/// extrapolation must agree with it within [`SCHEME_AGREEMENT_TOL`] or an
/// error is raised instead of a scheme-dependent answer.
pub fn pv_integrate_i1(alpha: f64, tol: f64) -> Result<QuadResult> {
    validate(alpha, tol)?;

    let g = |t: f64| fold_integrand1(alpha, t);
    let (value, error_estimate, fold_panels) =
        adaptive(&g, &[0.0, FRAC_PI_4, FRAC_PI_2], 0.25 * tol, 4000)?;

    let (diagnostic, excision_panels) = excision_scheme(alpha)?;
    let diff = (value - diagnostic.extrapolated).abs();
    if diff > SCHEME_AGREEMENT_TOL {
        return Err(Error::SchemeDisagreement {
            fold: value,
            excision: diagnostic.extrapolated,
            diff,
            limit: SCHEME_AGREEMENT_TOL,
        });
    }

    Ok(QuadResult {
        value,
        error_estimate,
        subdivisions: fold_panels + excision_panels,
        excision_diagnostic: Some(diagnostic),
    })
}

/// Integral 2 at the given exponent, as an absolutely convergent improper
/// integral. Breakpoints sit at every catalog angle including the interior
/// kink `theta_star(alpha)`.
pub fn integrate_i2(alpha: f64, tol: f64) -> Result<QuadResult> {
    validate(alpha, tol)?;
    let f = |t: f64| integrand2_raw(alpha, t);
    let (value, error_estimate, panels) = adaptive(
        &f,
        &[0.0, FRAC_PI_2, theta_star(alpha), PI],
        0.5 * tol,
        6000,
    )?;
    Ok(QuadResult {
        value,
        error_estimate,
        subdivisions: panels,
        excision_diagnostic: None,
    })
}
