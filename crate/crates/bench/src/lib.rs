//! Shared helpers for the benchmark targets.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tscl_core::{Dataset, TimeSeries};

/// Seeded random series with values in [-2, 2).
pub fn random_series(rng: &mut ChaCha8Rng, len: usize) -> TimeSeries {
    TimeSeries::new((0..len).map(|_| rng.gen_range(-2.0..2.0)).collect())
        .expect("non-empty finite series")
}

/// Seeded random pair of equal-length series.
pub fn random_pair(seed: u64, len: usize) -> (TimeSeries, TimeSeries) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (random_series(&mut rng, len), random_series(&mut rng, len))
}

/// A two-class noisy-sine dataset for clustering benchmarks.
pub fn sine_dataset(seed: u64, n: usize, m: usize) -> Dataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut series = Vec::new();
    let mut labels = Vec::new();
    for i in 0..n {
        let class = i % 2;
        let freq = if class == 0 { 1.0 } else { 2.0 };
        let phase: f64 = rng.gen_range(0.0..0.5);
        let values: Vec<f64> = (0..m)
            .map(|t| {
                (2.0 * std::f64::consts::PI * freq * t as f64 / m as f64 + phase).sin()
                    + rng.gen_range(-0.1..0.1)
            })
            .collect();
        series.push(TimeSeries::new(values).unwrap());
        labels.push(class.to_string());
    }
    Dataset::new("bench", series, Some(labels)).unwrap()
}
