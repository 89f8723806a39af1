//! Random streams.
//!
//! Every run owns a [`CgaRng`] seeded from `(base_seed, keys...)` through a
//! fixed SplitMix64 mixing chain, so results do not depend on the order in
//! which parallel workers pick up runs.

use rand::SeedableRng;
use rand_xoshiro::Xoshiro256PlusPlus;

/// Generator used for all runs. Supports `jump()` for stream splitting.
pub type CgaRng = Xoshiro256PlusPlus;

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 42;

#[inline]
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Mixes a base seed with a sequence of keys (run index, n, K bits, ...).
pub fn derive_seed(base_seed: u64, keys: &[u64]) -> u64 {
    keys.iter()
        .fold(splitmix64(base_seed), |acc, &k| splitmix64(acc ^ splitmix64(k)))
}

pub fn rng_from_seed(seed: u64) -> CgaRng {
    CgaRng::seed_from_u64(seed)
}
