//! Deterministic chunked sampling.
//!
//! Work is split into fixed-size chunks, each owning an RNG seeded from
//! (seed, chunk index). Chunk results are folded in index order, so the
//! outcome is identical whether chunks run in parallel or sequentially,
//! and identical across thread counts.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const CHUNK: u64 = 4096;

/// splitmix64; stable across platforms and versions.
pub fn mix_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed ^ stream.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// FNV-1a over bytes; used to derive per-cell seeds from string keys.
pub fn hash_str(s: &str) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    for b in s.as_bytes() {
        h ^= *b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

fn chunk_results<T, F>(total: u64, seed: u64, run: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut ChaCha8Rng, u64) -> T + Sync,
{
    let chunks = total.div_ceil(CHUNK);
    let run_chunk = |c: u64| {
        let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, c));
        let count = CHUNK.min(total - c * CHUNK);
        run(&mut rng, count)
    };
    #[cfg(feature = "parallel")]
    {
        (0..chunks).into_par_iter().map(run_chunk).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..chunks).map(run_chunk).collect()
    }
}

fn chunk_results_seq<T, F>(total: u64, seed: u64, run: F) -> Vec<T>
where
    F: Fn(&mut ChaCha8Rng, u64) -> T,
{
    let chunks = total.div_ceil(CHUNK);
    (0..chunks)
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, c));
            let count = CHUNK.min(total - c * CHUNK);
            run(&mut rng, count)
        })
        .collect()
}

/// Folds per-chunk values in chunk order. `run` draws `count` samples
/// from its chunk RNG and returns the chunk aggregate.
pub fn sampled_fold<T, F, G>(total: u64, seed: u64, run: F, fold: G, init: T) -> T
where
    T: Send,
    F: Fn(&mut ChaCha8Rng, u64) -> T + Sync,
    G: Fn(T, T) -> T,
{
    chunk_results(total, seed, run).into_iter().fold(init, fold)
}

/// Sequential twin of [`sampled_fold`], kept unconditionally for the
/// benchmark suite; produces bit-identical results.
pub fn sampled_fold_seq<T, F, G>(total: u64, seed: u64, run: F, fold: G, init: T) -> T
where
    F: Fn(&mut ChaCha8Rng, u64) -> T,
    G: Fn(T, T) -> T,
{
    chunk_results_seq(total, seed, run).into_iter().fold(init, fold)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn chunk_max(rng: &mut ChaCha8Rng, count: u64) -> f64 {
        (0..count).map(|_| rng.gen::<f64>()).fold(f64::NEG_INFINITY, f64::max)
    }

    #[test]
    fn parallel_and_sequential_agree_bitwise() {
        let a = sampled_fold(10_000, 42, chunk_max, f64::max, f64::NEG_INFINITY);
        let b = sampled_fold_seq(10_000, 42, chunk_max, f64::max, f64::NEG_INFINITY);
        assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn seeds_matter() {
        let a = sampled_fold(5_000, 1, chunk_max, f64::max, f64::NEG_INFINITY);
        let b = sampled_fold(5_000, 2, chunk_max, f64::max, f64::NEG_INFINITY);
        assert_ne!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn partial_last_chunk() {
        let count_sum = sampled_fold(CHUNK + 7, 0, |_, c| c, |a, b| a + b, 0);
        assert_eq!(count_sum, CHUNK + 7);
    }
}
