//! Seed derivation and RNG stream layout.
//!
//! Every random decision draws from a [`ChaCha8Rng`] seeded from the run seed
//! and pinned to a fixed stream, so catalog layout, RIV draws, exploration
//! draws and click simulation never share state. Two runs that differ only
//! in the exploration variant therefore see the same catalog and clicks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Named ChaCha streams.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Stream {
    CatalogLayout = 1,
    RivDraw = 2,
    HiddenObject = 3,
    Explore = 4,
    Clicks = 5,
}

/// ChaCha8 generator for `seed` on the given stream.
pub fn stream_rng(seed: u64, stream: Stream) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream as u64);
    rng
}

/// SplitMix64 finalizer.
#[inline]
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of trial `index` in a batch started from `base_seed`.
///
/// `splitmix64(splitmix64(base_seed) ^ index)`. Depends only on the pair, so
/// trials can run in any order or on any number of threads.
#[inline]
pub fn trial_seed(base_seed: u64, index: u64) -> u64 {
    splitmix64(splitmix64(base_seed) ^ index)
}
