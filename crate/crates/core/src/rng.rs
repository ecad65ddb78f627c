//! Seeded random streams and chunked Monte-Carlo drivers.
//!
//! Every estimator splits its trials into fixed-size chunks. Chunk `c` draws
//! from ChaCha stream `c` of the estimator's seed, and partial results are
//! combined in chunk order, so estimates do not depend on how many worker
//! threads rayon happens to use.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub type SimRng = ChaCha8Rng;

/// A Monte-Carlo estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub estimate: f64,
    pub std_error: f64,
    pub trials: u64,
}

impl McEstimate {
    /// Binomial proportion `hits / trials`.
    pub fn from_hits(hits: u64, trials: u64) -> Self {
        let p = hits as f64 / trials as f64;
        McEstimate {
            estimate: p,
            std_error: (p * (1.0 - p) / trials as f64).sqrt(),
            trials,
        }
    }
}

/// Trials per chunk.
pub const CHUNK_TRIALS: u64 = 1 << 14;

/// Independent stream `stream` of the generator seeded with `seed`.
pub fn substream(seed: u64, stream: u64) -> SimRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Derives a child seed for grid point / sub-experiment `index` (splitmix64).
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed
        .wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn chunks(trials: u64) -> impl IndexedParallelIterator<Item = (u64, u64)> {
    let n = trials.div_ceil(CHUNK_TRIALS) as usize;
    (0..n).into_par_iter().map(move |c| {
        let c = c as u64;
        let start = c * CHUNK_TRIALS;
        (c, (trials - start).min(CHUNK_TRIALS))
    })
}

/// Counts the trials for which `trial` returns true.
pub fn count_successes<F>(seed: u64, trials: u64, trial: F) -> u64
where
    F: Fn(&mut SimRng) -> bool + Sync,
{
    chunks(trials)
        .map(|(c, len)| {
            let mut rng = substream(seed, c);
            (0..len).filter(|_| trial(&mut rng)).count() as u64
        })
        .sum()
}

/// Mean and standard error of a real-valued per-trial statistic.
pub fn mean_and_stderr<F>(seed: u64, trials: u64, trial: F) -> (f64, f64)
where
    F: Fn(&mut SimRng) -> f64 + Sync,
{
    let partial: Vec<(f64, f64)> = chunks(trials)
        .map(|(c, len)| {
            let mut rng = substream(seed, c);
            let mut sum = 0.0;
            let mut sum_sq = 0.0;
            for _ in 0..len {
                let v = trial(&mut rng);
                sum += v;
                sum_sq += v * v;
            }
            (sum, sum_sq)
        })
        .collect();
    let (sum, sum_sq) = partial
        .iter()
        .fold((0.0, 0.0), |(s, q), &(a, b)| (s + a, q + b));
    let n = trials as f64;
    let mean = sum / n;
    let var = if trials > 1 {
        ((sum_sq - n * mean * mean) / (n - 1.0)).max(0.0)
    } else {
        0.0
    };
    (mean, (var / n).sqrt())
}

/// Collects `count` samples, chunked the same way as the estimators.
pub fn collect_samples<T, F>(seed: u64, count: u64, sample: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut SimRng) -> T + Sync,
{
    let parts: Vec<Vec<T>> = chunks(count)
        .map(|(c, len)| {
            let mut rng = substream(seed, c);
            (0..len).map(|_| sample(&mut rng)).collect()
        })
        .collect();
    parts.into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn substreams_differ_and_repeat() {
        let a: u64 = substream(7, 0).random();
        let b: u64 = substream(7, 1).random();
        assert_ne!(a, b);
        assert_eq!(a, substream(7, 0).random::<u64>());
    }

    #[test]
    fn derive_seed_spreads_indices() {
        let seeds: Vec<u64> = (0..100).map(|i| derive_seed(42, i)).collect();
        let mut sorted = seeds.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), seeds.len());
    }

    #[test]
    fn estimates_ignore_thread_count() {
        let run = || mean_and_stderr(3, 100_000, |rng| rng.random::<f64>());
        let single = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(run);
        let multi = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .unwrap()
            .install(run);
        assert_eq!(single.0.to_bits(), multi.0.to_bits());
        assert_eq!(single.1.to_bits(), multi.1.to_bits());
    }
}
