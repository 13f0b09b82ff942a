//! Seed-splitting scheme.
//!
//! All randomness comes from ChaCha8 streams, whose output is fixed across
//! platforms and releases of `rand_chacha`:
//!
//! * node placement for a replicate with seed `S` uses key `S`, stream 0;
//! * session `k` of that replicate uses key `S ^ k`, stream 1;
//! * replicate `j` of a run seeded with `B` has seed `splitmix64(B + j)`.
//!
//! Every session owns its stream, so results do not depend on how sessions
//! are scheduled across worker threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SimRng = ChaCha8Rng;

const PLACEMENT_STREAM: u64 = 0;
const SESSION_STREAM: u64 = 1;

pub fn network_rng(seed: u64) -> SimRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(PLACEMENT_STREAM);
    rng
}

pub fn session_rng(seed: u64, session: usize) -> SimRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ session as u64);
    rng.set_stream(SESSION_STREAM);
    rng
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn replicate_seed(base: u64, replicate: usize) -> u64 {
    splitmix64(base.wrapping_add(replicate as u64))
}
