//! Seeded randomness.
//!
//! Every trial owns its own [`TrialRng`] so trials can run concurrently and
//! reproduce exactly. Per-trial seeds are derived from the experiment seed by
//! a fixed mixing function rather than the standard library hasher, which is
//! not stable across releases.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// ChaCha8-backed stream: portable, seedable, fast enough for the trial
/// counts used here.
#[derive(Debug, Clone)]
pub struct TrialRng(ChaCha8Rng);

impl TrialRng {
    pub fn seeded(seed: u64) -> Self {
        TrialRng(ChaCha8Rng::seed_from_u64(seed))
    }

    /// Uniform integer in `[0, n)`. `n` must be nonzero.
    pub fn below(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        self.0.random_range(0..n)
    }

    pub fn below_u64(&mut self, n: u64) -> u64 {
        debug_assert!(n > 0);
        self.0.random_range(0..n)
    }

    /// Bernoulli draw with probability `p` (clamped to [0, 1]).
    pub fn chance(&mut self, p: f64) -> bool {
        if p <= 0.0 {
            return false;
        }
        if p >= 1.0 {
            return true;
        }
        self.0.random::<f64>() < p
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.random()
    }
}

/// splitmix64 finalizer; the standard 64-bit mixer.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derive a substream seed from a base seed and a list of tags
/// (e.g. config id, trial index). Stable across platforms and releases.
pub fn derive_seed(base: u64, tags: &[u64]) -> u64 {
    let mut acc = mix(base);
    for &tag in tags {
        acc = mix(acc ^ mix(tag));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_seeds_are_deterministic_and_distinct() {
        let a = derive_seed(42, &[1, 2]);
        let b = derive_seed(42, &[1, 2]);
        let c = derive_seed(42, &[2, 1]);
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn same_seed_same_stream() {
        let mut r1 = TrialRng::seeded(7);
        let mut r2 = TrialRng::seeded(7);
        for _ in 0..100 {
            assert_eq!(r1.next_u64(), r2.next_u64());
        }
    }
}
