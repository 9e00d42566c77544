//! Monte Carlo estimation of the sign moments of shared-term stable
//! vectors: the pair moment E[sgn X1 sgn X2], the X1-S moment, the two
//! orthant probabilities, the n-fold product moment, and the full
//! distribution of (sgn X1, sgn S, sgn S1).
//!
//! Signs are read off `S + S_i` directly; dividing by `2^{1/alpha}` cannot
//! change a sign and overflows for small alpha. An exact zero sum has
//! probability zero under a continuous law; if one ever appears it maps to
//! +1 and is counted in a reported anomaly tally rather than silently
//! dropped.
//!
//! Work is chunked ([`CHUNK_TRIALS`] trials per chunk), chunk `c` drawing
//! from stream `c` of the job seed; per-chunk tallies are combined in chunk
//! order, so results are bit-identical for any thread count.

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::alpha::Alpha;
use crate::error::{Error, Result};
use crate::rng::{RngStream, CHUNK_TRIALS};
use crate::sampler::sample_sas_unchecked;

/// Minimum trials accepted by every estimator.
pub const MIN_TRIALS: u64 = 10_000;

/// Largest n for the n-fold product moment; the signal 1/(n+1) drowns in
/// Monte Carlo noise long before this.
pub const MAX_N: u32 = 32;

/// A Monte Carlo estimate with its standard error and provenance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub trials: u64,
    pub seed: u64,
    /// Exact-zero sign sums encountered (mapped to +1); see module docs.
    pub sign_zero_anomalies: u64,
}

/// Combined standard error of two independent estimates.
pub fn combined_std_error(a: &McEstimate, b: &McEstimate) -> f64 {
    (a.std_error * a.std_error + b.std_error * b.std_error).sqrt()
}

#[inline]
fn is_positive(x: f64, anomalies: &mut u64) -> bool {
    if x > 0.0 {
        true
    } else if x < 0.0 {
        false
    } else {
        *anomalies += 1;
        true
    }
}

/// Standard error of a mean of +-1 products: sqrt(sample variance / n).
fn product_std_error(mean: f64, trials: u64) -> f64 {
    let n = trials as f64;
    ((1.0 - mean * mean).max(0.0) / (n - 1.0)).sqrt()
}

/// Binomial standard error for an estimated probability.
fn binomial_std_error(p: f64, trials: u64) -> f64 {
    (p * (1.0 - p) / trials as f64).sqrt()
}

fn validate(alpha: Alpha, trials: u64) -> Result<f64> {
    let alpha = alpha.require_sampler_valid()?;
    if trials < MIN_TRIALS {
        return Err(Error::TooFewTrials {
            got: trials,
            min: MIN_TRIALS,
        });
    }
    Ok(alpha.value())
}

/// Run `trials` split into fixed-size chunks, one RNG stream per chunk,
/// and collect the per-chunk tallies in chunk order.
fn map_chunks<A, F>(trials: u64, seed: u64, per_chunk: F) -> Vec<A>
where
    A: Send,
    F: Fn(u64, &mut ChaCha8Rng) -> A + Sync,
{
    let n_chunks = trials.div_ceil(CHUNK_TRIALS);
    (0..n_chunks)
        .into_par_iter()
        .map(|c| {
            let count = CHUNK_TRIALS.min(trials - c * CHUNK_TRIALS);
            let mut rng = RngStream::new(seed, c).rng();
            per_chunk(count, &mut rng)
        })
        .collect()
}

/// Joint sign tallies of a pair of +-1 variables over a shared stream.
///
/// All pairwise estimators (product moment, orthant probability, and the
/// equal-vs-unequal identity between them) derive from one of these, so
/// identities hold on shared data to rounding error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairSignCounts {
    pub both_pos: u64,
    pub pos_neg: u64,
    pub neg_pos: u64,
    pub both_neg: u64,
    pub trials: u64,
    pub seed: u64,
    pub sign_zero_anomalies: u64,
}

impl PairSignCounts {
    fn estimate(&self, mean: f64, std_error: f64) -> McEstimate {
        McEstimate {
            mean,
            std_error,
            trials: self.trials,
            seed: self.seed,
            sign_zero_anomalies: self.sign_zero_anomalies,
        }
    }

    /// E[sign1 * sign2]: equal-sign fraction minus unequal-sign fraction.
    pub fn product_estimate(&self) -> McEstimate {
        let eq = (self.both_pos + self.both_neg) as f64;
        let uneq = (self.pos_neg + self.neg_pos) as f64;
        let mean = (eq - uneq) / self.trials as f64;
        self.estimate(mean, product_std_error(mean, self.trials))
    }

    /// P[both signs positive].
    pub fn positive_orthant_estimate(&self) -> McEstimate {
        let p = self.both_pos as f64 / self.trials as f64;
        self.estimate(p, binomial_std_error(p, self.trials))
    }

    /// P[signs equal]; the product estimate is exactly 2 * this - 1.
    pub fn equal_sign_probability(&self) -> f64 {
        (self.both_pos + self.both_neg) as f64 / self.trials as f64
    }

    /// P[both signs negative]; equals the positive orthant in distribution
    /// by sign symmetry.
    pub fn negative_orthant_estimate(&self) -> McEstimate {
        let p = self.both_neg as f64 / self.trials as f64;
        self.estimate(p, binomial_std_error(p, self.trials))
    }
}

#[derive(Default, Clone, Copy)]
struct PairTally {
    pp: u64,
    pm: u64,
    mp: u64,
    mm: u64,
    anomalies: u64,
}

impl PairTally {
    #[inline]
    fn record(&mut self, first_pos: bool, second_pos: bool) {
        match (first_pos, second_pos) {
            (true, true) => self.pp += 1,
            (true, false) => self.pm += 1,
            (false, true) => self.mp += 1,
            (false, false) => self.mm += 1,
        }
    }
}

fn collect_pair_counts<F>(alpha: Alpha, trials: u64, seed: u64, signs: F) -> Result<PairSignCounts>
where
    F: Fn(f64, &mut ChaCha8Rng, &mut u64) -> (bool, bool) + Sync,
{
    let a = validate(alpha, trials)?;
    let tallies = map_chunks(trials, seed, |count, rng| {
        let mut t = PairTally::default();
        for _ in 0..count {
            let (p1, p2) = signs(a, rng, &mut t.anomalies);
            t.record(p1, p2);
        }
        t
    });
    let mut out = PairSignCounts {
        both_pos: 0,
        pos_neg: 0,
        neg_pos: 0,
        both_neg: 0,
        trials,
        seed,
        sign_zero_anomalies: 0,
    };
    for t in tallies {
        out.both_pos += t.pp;
        out.pos_neg += t.pm;
        out.neg_pos += t.mp;
        out.both_neg += t.mm;
        out.sign_zero_anomalies += t.anomalies;
    }
    Ok(out)
}

/// Joint sign tallies of (sgn X1, sgn X2) with X_i = (S + S_i) / 2^{1/alpha}.
pub fn pair_sign_counts(alpha: Alpha, trials: u64, seed: u64) -> Result<PairSignCounts> {
    collect_pair_counts(alpha, trials, seed, |a, rng, anomalies| {
        let s = sample_sas_unchecked(a, rng);
        let s1 = sample_sas_unchecked(a, rng);
        let s2 = sample_sas_unchecked(a, rng);
        (
            is_positive(s + s1, anomalies),
            is_positive(s + s2, anomalies),
        )
    })
}

/// Joint sign tallies of (sgn X1, sgn S).
pub fn x1_s_sign_counts(alpha: Alpha, trials: u64, seed: u64) -> Result<PairSignCounts> {
    collect_pair_counts(alpha, trials, seed, |a, rng, anomalies| {
        let s = sample_sas_unchecked(a, rng);
        let s1 = sample_sas_unchecked(a, rng);
        (is_positive(s + s1, anomalies), is_positive(s, anomalies))
    })
}

/// Estimate E[sgn(X1) sgn(X2)]; the target is 1/3 for every valid alpha.
pub fn estimate_pair_product(alpha: Alpha, trials: u64, seed: u64) -> Result<McEstimate> {
    Ok(pair_sign_counts(alpha, trials, seed)?.product_estimate())
}

/// Estimate P[sgn(X1) = sgn(X2) = 1]; the target is 1/3.
pub fn estimate_positive_orthant_pair(alpha: Alpha, trials: u64, seed: u64) -> Result<McEstimate> {
    Ok(pair_sign_counts(alpha, trials, seed)?.positive_orthant_estimate())
}

/// Estimate E[sgn(X1) sgn(S)]; the target is 1/2.
pub fn estimate_x1_s_product(alpha: Alpha, trials: u64, seed: u64) -> Result<McEstimate> {
    Ok(x1_s_sign_counts(alpha, trials, seed)?.product_estimate())
}

/// Estimate P[sgn(X1) = sgn(S) = 1]; the target is 3/8.
pub fn estimate_positive_orthant_x1_s(alpha: Alpha, trials: u64, seed: u64) -> Result<McEstimate> {
    Ok(x1_s_sign_counts(alpha, trials, seed)?.positive_orthant_estimate())
}

/// Estimate E[sgn(X1 X2 ... Xn)]: 1/(n+1) for even n, 0 for odd n.
pub fn estimate_n_product(alpha: Alpha, n: u32, trials: u64, seed: u64) -> Result<McEstimate> {
    if n == 0 || n > MAX_N {
        return Err(Error::InvalidN { got: n, max: MAX_N });
    }
    let a = validate(alpha, trials)?;
    let tallies: Vec<(u64, u64)> = map_chunks(trials, seed, |count, rng| {
        let mut pos = 0u64;
        let mut anomalies = 0u64;
        for _ in 0..count {
            let s = sample_sas_unchecked(a, rng);
            let mut positive = true;
            for _ in 0..n {
                let si = sample_sas_unchecked(a, rng);
                positive ^= !is_positive(s + si, &mut anomalies);
            }
            pos += u64::from(positive);
        }
        (pos, anomalies)
    });
    let pos: u64 = tallies.iter().map(|t| t.0).sum();
    let anomalies: u64 = tallies.iter().map(|t| t.1).sum();
    let mean = (2.0 * pos as f64 - trials as f64) / trials as f64;
    Ok(McEstimate {
        mean,
        std_error: product_std_error(mean, trials),
        trials,
        seed,
        sign_zero_anomalies: anomalies,
    })
}

/// Probabilities over the eight sign vectors (sgn X1, sgn S, sgn S1),
/// outcomes ordered lexicographically with -1 before +1.
#[derive(Debug, Clone, PartialEq)]
pub struct SignVectorPmf {
    probs: [f64; 8],
}

impl SignVectorPmf {
    /// Outcomes in index order: (-1,-1,-1), (-1,-1,+1), ..., (+1,+1,+1).
    pub const OUTCOMES: [[i8; 3]; 8] = [
        [-1, -1, -1],
        [-1, -1, 1],
        [-1, 1, -1],
        [-1, 1, 1],
        [1, -1, -1],
        [1, -1, 1],
        [1, 1, -1],
        [1, 1, 1],
    ];

    /// Validates that the entries are probabilities summing to 1 within
    /// 1e-12.
    pub fn from_probs(probs: [f64; 8]) -> Result<Self> {
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > 1e-12 || probs.iter().any(|&p| !(0.0..=1.0).contains(&p)) {
            return Err(Error::PmfNotNormalized(sum));
        }
        Ok(SignVectorPmf { probs })
    }

    pub fn index(v: [i8; 3]) -> usize {
        v.iter()
            .fold(0, |acc, &vi| (acc << 1) | usize::from(vi > 0))
    }

    pub fn prob(&self, v: [i8; 3]) -> f64 {
        self.probs[Self::index(v)]
    }

    pub fn probs(&self) -> &[f64; 8] {
        &self.probs
    }

    /// E[v_i v_j] under this distribution (coordinates 0, 1, 2).
    pub fn product_moment(&self, i: usize, j: usize) -> f64 {
        Self::OUTCOMES
            .iter()
            .map(|v| self.prob(*v) * f64::from(v[i]) * f64::from(v[j]))
            .sum()
    }

    /// Largest absolute per-outcome difference against another pmf.
    pub fn max_abs_deviation(&self, other: &SignVectorPmf) -> f64 {
        self.probs
            .iter()
            .zip(&other.probs)
            .map(|(p, q)| (p - q).abs())
            .fold(0.0, f64::max)
    }
}

/// Raw outcome counts behind an empirical sign-vector pmf.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignVectorCounts {
    pub counts: [u64; 8],
    pub trials: u64,
    pub seed: u64,
    pub sign_zero_anomalies: u64,
}

impl SignVectorCounts {
    pub fn pmf(&self) -> SignVectorPmf {
        let mut probs = [0.0; 8];
        for (p, &c) in probs.iter_mut().zip(&self.counts) {
            *p = c as f64 / self.trials as f64;
        }
        SignVectorPmf::from_probs(probs).expect("frequencies of a partition sum to 1")
    }
}

/// Tally the eight outcomes of (sgn X1, sgn S, sgn S1).
pub fn sign_vector_counts(alpha: Alpha, trials: u64, seed: u64) -> Result<SignVectorCounts> {
    let a = validate(alpha, trials)?;
    let tallies: Vec<([u64; 8], u64)> = map_chunks(trials, seed, |count, rng| {
        let mut counts = [0u64; 8];
        let mut anomalies = 0u64;
        for _ in 0..count {
            let s = sample_sas_unchecked(a, rng);
            let s1 = sample_sas_unchecked(a, rng);
            let x1_pos = is_positive(s + s1, &mut anomalies);
            let s_pos = is_positive(s, &mut anomalies);
            let s1_pos = is_positive(s1, &mut anomalies);
            let idx = (usize::from(x1_pos) << 2) | (usize::from(s_pos) << 1) | usize::from(s1_pos);
            counts[idx] += 1;
        }
        (counts, anomalies)
    });
    let mut counts = [0u64; 8];
    let mut anomalies = 0u64;
    for (c, a_) in tallies {
        for (dst, src) in counts.iter_mut().zip(c) {
            *dst += src;
        }
        anomalies += a_;
    }
    Ok(SignVectorCounts {
        counts,
        trials,
        seed,
        sign_zero_anomalies: anomalies,
    })
}

/// Empirical distribution of (sgn X1, sgn S, sgn S1) over `trials` draws.
pub fn estimate_sign_vector_pmf(alpha: Alpha, trials: u64, seed: u64) -> Result<SignVectorPmf> {
    Ok(sign_vector_counts(alpha, trials, seed)?.pmf())
}
