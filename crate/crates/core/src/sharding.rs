//! Deterministic parallel trial sharding.
//!
//! Trials are cut into fixed shards of [`SHARD_SIZE`]. Shard `i` of a run with
//! master seed `s` draws from a ChaCha8 generator keyed by `s` (expanded with
//! `seed_from_u64`) on stream `i`. Counts therefore depend only on
//! `(seed, n)` and never on the number of rayon workers.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Trials per shard.
pub const SHARD_SIZE: u64 = 1 << 16;

/// Identifier recorded in reports and CSV metadata.
pub const GENERATOR_ID: &str = "chacha8-stream-per-shard-65536";

pub type TrialRng = ChaCha8Rng;

/// Generator owned by shard `shard` of a run seeded with `seed`.
pub fn shard_rng(seed: u64, shard: u64) -> TrialRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(shard);
    rng
}

/// `(shard index, trials in shard)` for a run of `n` trials.
pub fn shard_layout(n: u64) -> impl Iterator<Item = (u64, u64)> {
    let shards = n.div_ceil(SHARD_SIZE);
    (0..shards).map(move |i| (i, SHARD_SIZE.min(n - i * SHARD_SIZE)))
}

/// Runs `shard_fn(rng, len)` for every shard in parallel and returns the
/// per-shard results in shard order.
pub fn map_shards<T, F>(n: u64, seed: u64, shard_fn: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut TrialRng, u64) -> T + Sync,
{
    let layout: Vec<(u64, u64)> = shard_layout(n).collect();
    layout
        .into_par_iter()
        .map(|(idx, len)| {
            let mut rng = shard_rng(seed, idx);
            shard_fn(&mut rng, len)
        })
        .collect()
}
