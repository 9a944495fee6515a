//! Per-replication random streams.
//!
//! Every random draw in a simulation comes from a ChaCha8 stream keyed by the
//! master seed, with the stream id derived from the replication index and the
//! purpose of the draws. Replications are therefore independent of each other
//! and of the order in which they are executed.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// What a stream is used for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StreamPurpose {
    Weights = 0,
    Edges = 1,
}

/// Replication index reserved for the shared weight vector of fixed-weights experiments.
pub const FIXED_WEIGHTS_REPLICATION: u64 = (u64::MAX >> 2) - 1;

/// (master seed, replication index) pair identifying a sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeedLineage {
    pub seed: u64,
    pub replication: u64,
}

impl SeedLineage {
    pub fn new(seed: u64, replication: u64) -> Self {
        Self { seed, replication }
    }

    pub fn rng(&self, purpose: StreamPurpose) -> ChaCha8Rng {
        stream_rng(self.seed, self.replication, purpose)
    }
}

pub fn stream_rng(master: u64, replication: u64, purpose: StreamPurpose) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream((replication << 2) | purpose as u64);
    rng
}
