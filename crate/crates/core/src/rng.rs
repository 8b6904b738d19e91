//! Seeded randomness.
//!
//! Every random draw in the crate goes through ChaCha8 (`rand_chacha`), a
//! counter-based stream cipher generator. A `(seed, stream)` pair names one
//! independent stream, which is how multi-trial runs split a master seed
//! without depending on scheduling order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type SeededRng = ChaCha8Rng;

pub fn rng_for(seed: u64, stream: u64) -> SeededRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform integer in `0..bound`, drawn through `u64` so results do not
/// depend on the platform word size.
pub fn below(rng: &mut SeededRng, bound: usize) -> usize {
    rng.gen_range(0..bound as u64) as usize
}

/// True with probability `p`.
pub fn coin(rng: &mut SeededRng, p: f64) -> bool {
    rng.gen::<f64>() < p
}

/// Fisher-Yates shuffle using [`below`].
pub fn shuffle<T>(rng: &mut SeededRng, items: &mut [T]) {
    for i in (1..items.len()).rev() {
        let j = below(rng, i + 1);
        items.swap(i, j);
    }
}
