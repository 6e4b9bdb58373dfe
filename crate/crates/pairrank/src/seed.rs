//! Deterministic seed derivation for independent trials.
//!
//! Sweeps run many trials, possibly in parallel; each trial owns an
//! independent generator seeded by mixing the base seed with the trial's
//! coordinates (algorithm tag, grid index, trial index). The mix is a fixed
//! splitmix64 chain, so schedules and platforms cannot change the streams.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// splitmix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derives a child seed from a base seed and a sequence of coordinates.
pub fn derive_seed(base: u64, parts: &[u64]) -> u64 {
    let mut state = mix(base);
    for (idx, part) in parts.iter().enumerate() {
        state = mix(state ^ mix(part.wrapping_add(idx as u64 + 1)));
    }
    state
}

/// A seeded generator for one derived stream.
pub fn rng_from(base: u64, parts: &[u64]) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(base, parts))
}
