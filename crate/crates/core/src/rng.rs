//! Seeded, platform-independent random streams.
//!
//! Every trial draws from its own ChaCha8 stream: the key is derived from the
//! experiment seed and the stream id is the trial index, so trials can run in
//! any order (or concurrently) and still reproduce bit-for-bit.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type TrialRng = ChaCha8Rng;

pub fn trial_stream(seed: u64, trial_index: u64) -> TrialRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial_index);
    rng
}
