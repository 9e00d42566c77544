//! Exact divide-and-color model for the sign vector (sgn X1, sgn S, sgn S1).
//!
//! S and S1 are independent, so coordinates 2 and 3 never share a block,
//! and (-1, +1, +1) is impossible for the sign vector, so coordinate 1 is
//! never alone. That leaves exactly two admissible partitions of {1,2,3} -
//! {{1,2},{3}} and {{1,3},{2}} - and symmetry puts weight 1/2 on each.
//! Blocks are colored independently +-1 fair, giving a closed-form pmf
//! over the eight sign vectors that Monte Carlo from stable vectors must
//! reproduce for every sampler-valid alpha.

use num::{BigRational, One, ToPrimitive};

use crate::alpha::Alpha;
use crate::error::{Error, Result};
use crate::sign_mc::{sign_vector_counts, SignVectorPmf};

/// Trials floor for the Monte Carlo comparison.
pub const MIN_COMPARE_TRIALS: u64 = 100_000;

/// Mixture weights over the two admissible partitions of {1, 2, 3}.
///
/// Kept as a parameter (rather than hard-coding 1/2) so tests can run
/// degenerate weightings as negative controls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DacPartitionWeights {
    weight_12_3: f64,
    weight_13_2: f64,
}

impl DacPartitionWeights {
    /// Weights must lie in [0, 1] and sum to 1 within 1e-12.
    pub fn new(weight_12_3: f64, weight_13_2: f64) -> Result<Self> {
        let in_range = (0.0..=1.0).contains(&weight_12_3) && (0.0..=1.0).contains(&weight_13_2);
        if !in_range || (weight_12_3 + weight_13_2 - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidWeights(weight_12_3, weight_13_2));
        }
        Ok(DacPartitionWeights {
            weight_12_3,
            weight_13_2,
        })
    }

    /// Weight of {{1,2},{3}}: ties sgn X1 to sgn S.
    pub fn weight_12_3(&self) -> f64 {
        self.weight_12_3
    }

    /// Weight of {{1,3},{2}}: ties sgn X1 to sgn S1.
    pub fn weight_13_2(&self) -> f64 {
        self.weight_13_2
    }
}

impl Default for DacPartitionWeights {
    /// The symmetric weighting (1/2, 1/2) realized by the sign vector.
    fn default() -> Self {
        DacPartitionWeights {
            weight_12_3: 0.5,
            weight_13_2: 0.5,
        }
    }
}

/// Exact pmf in rational arithmetic, outcome order as
/// [`SignVectorPmf::OUTCOMES`]. Both two-block partitions contribute
/// weight * 2^-2 to each sign vector they are consistent with.
pub fn dac_pmf_rational(weights: &DacPartitionWeights) -> [BigRational; 8] {
    let w1 = BigRational::from_float(weights.weight_12_3).expect("validated finite weight");
    let w2 = BigRational::one() - &w1;
    let quarter = BigRational::new(1.into(), 4.into());
    SignVectorPmf::OUTCOMES.map(|v| {
        let mut p = BigRational::from_integer(0.into());
        if v[0] == v[1] {
            p += &w1 * &quarter;
        }
        if v[0] == v[2] {
            p += &w2 * &quarter;
        }
        p
    })
}

/// Exact pmf converted to f64 at the interface.
pub fn dac_pmf(weights: &DacPartitionWeights) -> SignVectorPmf {
    let exact = dac_pmf_rational(weights);
    let probs = exact.map(|p| p.to_f64().expect("probabilities fit in f64"));
    SignVectorPmf::from_probs(probs).expect("rational pmf sums to one")
}

/// Largest absolute deviation over the eight outcomes between the
/// empirical sign-vector frequencies at this alpha and the exact pmf with
/// the symmetric default weights.
pub fn compare_mc_vs_dac(alpha: Alpha, trials: u64, seed: u64) -> Result<f64> {
    if trials < MIN_COMPARE_TRIALS {
        return Err(Error::TooFewTrials {
            got: trials,
            min: MIN_COMPARE_TRIALS,
        });
    }
    let empirical = sign_vector_counts(alpha, trials, seed)?.pmf();
    Ok(empirical.max_abs_deviation(&dac_pmf(&DacPartitionWeights::default())))
}
