//! Seeded random streams.
//!
//! Every randomized operation takes an explicit generator. A run derives
//! independent named substreams from one master seed, so e.g. changing the
//! solver's consumption of randomness does not perturb the codebook.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Substream identifiers used by the run driver.
pub mod stream {
    pub const INITIAL_POINTS: u64 = 0;
    pub const CODEBOOK: u64 = 1;
    pub const SOLVER: u64 = 2;
    pub const DECODER: u64 = 3;
}

/// An independent generator for substream `index` of `master_seed`.
///
/// Streams with different indices never overlap for the same seed.
pub fn substream(master_seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(index);
    rng
}
