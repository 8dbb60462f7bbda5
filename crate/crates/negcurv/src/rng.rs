//! Deterministic randomness: one master `u64` seed fans out into
//! independent counter-indexed streams.
//!
//! Every sampled estimator derives the generator for work item `i` as
//! `stream_rng(seed, i)`, so (a) results are byte-reproducible for a given
//! seed regardless of thread count or rayon scheduling, and (b) enlarging a
//! sample (more quadruples, more pairs) *extends* the previous sample
//! instead of reshuffling it, which is what makes sup-estimators monotone
//! under nested sampling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The generator for work-item `stream` under a master `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
