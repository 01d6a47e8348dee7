//! Timing and work-counter measurements of the linear reducer on uniformly
//! random chord diagrams.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::reduce::{classify_residual, fully_reduce_linear};
use crate::word::random_word;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    /// Loop count `n`; words have `2n` symbols.
    pub size: usize,
    pub trials: usize,
    pub mean_ms: f64,
    pub max_ms: f64,
    /// Mean work counter divided by `n`.
    pub work_per_loop: f64,
    pub embeddable: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchTable {
    pub seed: u64,
    pub rows: Vec<BenchRow>,
    /// Largest over smallest `work_per_loop` across rows.
    pub spread: Option<f64>,
    pub max_spread: f64,
    pub linear: bool,
}

/// Word stream for `(seed, size)`. Sizes get independent streams so that
/// adding a size to the list does not change the words of the others.
pub fn bench_rng(seed: u64, size: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(size as u64);
    rng
}

pub fn run_bench(sizes: &[usize], trials: usize, seed: u64, max_spread: f64) -> BenchTable {
    let mut rows = Vec::new();
    if trials > 0 {
        for &size in sizes {
            let mut rng = bench_rng(seed, size);
            let mut total_ms = 0.0;
            let mut max_ms: f64 = 0.0;
            let mut work = 0u64;
            let mut embeddable = 0;
            for _ in 0..trials {
                let word = random_word(size, &mut rng);
                let start = Instant::now();
                let trace = fully_reduce_linear(&word);
                let ok = classify_residual(&trace.residual).is_torus_residual();
                let ms = start.elapsed().as_secs_f64() * 1e3;
                total_ms += ms;
                max_ms = max_ms.max(ms);
                work += trace.work;
                embeddable += usize::from(ok);
            }
            rows.push(BenchRow {
                size,
                trials,
                mean_ms: total_ms / trials as f64,
                max_ms,
                work_per_loop: work as f64 / (trials as f64 * size.max(1) as f64),
                embeddable,
            });
        }
    }
    let ratios: Vec<f64> = rows
        .iter()
        .filter(|r| r.size > 0)
        .map(|r| r.work_per_loop)
        .collect();
    let spread = if ratios.is_empty() {
        None
    } else {
        let max = ratios.iter().cloned().fold(f64::MIN, f64::max);
        let min = ratios.iter().cloned().fold(f64::MAX, f64::min);
        Some(max / min)
    };
    BenchTable {
        seed,
        rows,
        spread,
        max_spread,
        linear: spread.is_none_or(|s| s <= max_spread),
    }
}
