use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use tscl_bench::sine_dataset;
use tscl_core::averaging::{dba, BarycentreConfig};
use tscl_core::clustering::{self, ClustererKind, ClusteringConfig};
use tscl_core::{DistanceKind, DistanceSpec};

fn fits(c: &mut Criterion) {
    let data = sine_dataset(3, 30, 60);
    let mut group = c.benchmark_group("fit_30x60");
    group.sample_size(10);
    for (name, clusterer, kind) in [
        ("kmeans_ed", ClustererKind::KMeans, DistanceKind::Ed),
        ("kmeans_dtw", ClustererKind::KMeans, DistanceKind::Dtw),
        ("kmedoids_msm", ClustererKind::KMedoids, DistanceKind::Msm),
    ] {
        let mut config = ClusteringConfig::new(2, clusterer, DistanceSpec::new(kind));
        config.restarts = 3;
        group.bench_function(name, |bench| {
            bench.iter(|| clustering::fit(black_box(&data), &config).unwrap())
        });
    }
    group.finish();
}

fn barycentre(c: &mut Criterion) {
    let data = sine_dataset(5, 10, 60);
    let config = BarycentreConfig::default();
    c.bench_function("dba_10x60", |bench| {
        bench.iter(|| dba(black_box(data.series()), &config, None, 1).unwrap())
    });
}

criterion_group!(benches, fits, barycentre);
criterion_main!(benches);
