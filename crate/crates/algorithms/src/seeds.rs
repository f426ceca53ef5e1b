//! Deterministic seed derivation.

use rand::RngCore;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Seed for sub-task `index` of a computation seeded with `master`. Distinct
/// indices give independent streams, independent of evaluation order.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(index);
    rng.next_u64()
}

/// Seed for `(a, b)` pairs of indices.
pub fn derive_seed2(master: u64, a: u64, b: u64) -> u64 {
    derive_seed(derive_seed(master, a), b)
}
