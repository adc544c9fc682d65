//! Seeded random streams.
//!
//! Every stochastic draw of a run comes from ChaCha8 keyed by the run seed,
//! with a distinct stream id per purpose, so deployment, election and fault
//! injection never perturb each other.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stream {
    Deployment = 0,
    Election = 1,
    Faults = 2,
}

pub fn stream(seed: u64, which: Stream) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(which as u64);
    rng
}
