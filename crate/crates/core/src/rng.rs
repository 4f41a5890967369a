//! Seeded random streams.
//!
//! Every stream is a ChaCha8 generator (`rand_chacha`). A trial's 64-bit key
//! is derived from `(master_seed, trial_index)` with a SplitMix64 finalizer,
//! and the trial owns two ChaCha streams under that key:
//!
//! * stream [`MAIN_STREAM`]: initial population and all standard matings;
//! * stream [`TWIN_STREAM`]: the designated twin-candidate mating.
//!
//! Keeping the twin draws on their own stream means standard matings see the
//! same sequence whether or not the twin operator is active.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Random stream used throughout the crate.
pub type RandomStream = ChaCha8Rng;

pub const MAIN_STREAM: u64 = 0;
pub const TWIN_STREAM: u64 = 1;

/// SplitMix64 output function.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Key of trial `trial_index` under `master_seed`.
pub fn trial_key(master_seed: u64, trial_index: u64) -> u64 {
    splitmix64(splitmix64(master_seed) ^ trial_index.wrapping_mul(0xD1B5_4A32_D192_ED03))
}

/// Stream `stream` of the generator keyed by `key`.
pub fn stream(key: u64, stream: u64) -> RandomStream {
    let mut rng = ChaCha8Rng::seed_from_u64(key);
    rng.set_stream(stream);
    rng
}

/// The pair of streams owned by one trial.
#[derive(Debug, Clone)]
pub struct TrialStreams {
    pub main: RandomStream,
    pub twin: RandomStream,
}

impl TrialStreams {
    pub fn new(master_seed: u64, trial_index: u64) -> Self {
        let key = trial_key(master_seed, trial_index);
        Self {
            main: stream(key, MAIN_STREAM),
            twin: stream(key, TWIN_STREAM),
        }
    }
}
