// SPDX-License-Identifier: Apache-2.0

//! Named random streams.
//!
//! All randomness comes from ChaCha8, a counter-based generator. A
//! `(seed, stream)` pair fully determines a sequence, so work items that
//! each own a stream can run in any order or on any thread.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use rand_chacha::ChaCha8Rng as StreamRng;

/// Generator for stream `stream` of seed `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Packs a two-level stream id (e.g. generation and individual).
pub fn stream_id(major: u32, minor: u32) -> u64 {
    (u64::from(major) << 32) | u64::from(minor)
}
