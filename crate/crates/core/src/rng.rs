//! Seed derivation for independent, schedule-free random streams.
//!
//! Every consumer of randomness (a trajectory, a measurement batch at one
//! step boundary, a readout pass) gets its own ChaCha stream keyed by the
//! user seed and a domain tag, indexed by its position. Parallel execution
//! therefore draws exactly the same numbers as serial execution.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Domain tags separating the stream families.
pub mod domain {
    pub const SAMPLING: u64 = 1;
    pub const FAULTS: u64 = 2;
    pub const TRAJECTORY_SHOTS: u64 = 3;
    pub const READOUT: u64 = 4;
}

pub fn stream(seed: u64, domain: u64, index: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&domain.to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(index);
    rng
}
