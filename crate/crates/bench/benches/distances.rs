use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use tscl_bench::random_pair;
use tscl_core::{distances, DistanceKind, DistanceSpec};

fn kernels(c: &mut Criterion) {
    let mut group = c.benchmark_group("kernels_len100");
    let (a, b) = random_pair(7, 100);
    for kind in DistanceKind::ALL {
        let spec = DistanceSpec::new(kind);
        group.bench_function(kind.name(), |bench| {
            bench.iter(|| distances::distance(black_box(&a), black_box(&b), &spec).unwrap())
        });
    }
    group.finish();
}

fn dtw_scaling(c: &mut Criterion) {
    let mut group = c.benchmark_group("dtw_scaling");
    group.sample_size(10);
    let spec = DistanceSpec::new(DistanceKind::Dtw);
    for len in [100usize, 500, 1000, 2000] {
        let (a, b) = random_pair(len as u64, len);
        group.bench_with_input(BenchmarkId::from_parameter(len), &len, |bench, _| {
            bench.iter(|| distances::dtw(black_box(&a), black_box(&b), &spec).unwrap())
        });
    }
    group.finish();
}

fn pairwise(c: &mut Criterion) {
    let data = tscl_bench::sine_dataset(11, 40, 100);
    let spec = DistanceSpec::new(DistanceKind::Msm);
    c.bench_function("pairwise_msm_40x100", |bench| {
        bench.iter(|| distances::pairwise_distance(black_box(&data), None, &spec).unwrap())
    });
}

criterion_group!(benches, kernels, dtw_scaling, pairwise);
criterion_main!(benches);
