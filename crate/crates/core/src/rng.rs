//! Reproducible random streams.
//!
//! Every Monte Carlo job is keyed by a 64-bit seed, and work is split into
//! chunks that each draw from their own ChaCha stream. Chunk `c` of a job
//! always uses `stream_index = c`, so estimates are bit-identical for any
//! thread count or execution order.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Trials per chunk in parallel Monte Carlo jobs.
pub const CHUNK_TRIALS: u64 = 1 << 16;

/// One reproducible variate stream: a (seed, stream_index) pair.
///
/// Identical pairs yield identical sequences regardless of how the
/// surrounding job is parallelized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RngStream {
    pub seed: u64,
    pub stream_index: u64,
}

impl RngStream {
    pub fn new(seed: u64, stream_index: u64) -> Self {
        RngStream { seed, stream_index }
    }

    /// Materialize the generator for this stream.
    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream_index);
        rng
    }
}

/// Derive a per-experiment seed from a master seed and a textual label.
///
/// FNV-1a over the label mixed through SplitMix64; stable across builds and
/// platforms, so named sub-experiments of one report never share streams.
pub fn derive_seed(master: u64, label: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for byte in label.bytes() {
        h ^= u64::from(byte);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    splitmix64(master ^ h)
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}
