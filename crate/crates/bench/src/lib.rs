//! Shared inputs for the criterion benchmarks.

use barker_core::BinarySequence;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Uniformly random sequence of length `n`, reproducible from `seed`.
pub fn random_sequence(n: usize, seed: u64) -> BinarySequence {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    BinarySequence::from_bools((0..n).map(|_| rng.gen_bool(0.5))).expect("n >= 1")
}
