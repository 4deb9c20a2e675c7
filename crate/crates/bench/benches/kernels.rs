//! Benchmarks for the hot kernels: the factorization dominates every
//! experiment's runtime, followed by the orthogonalization in the
//! hyperplane experiments and the samplers.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use std::hint::black_box;

use hdvol::linalg::{log_abs_det, unit_normal, SquareMatrix};
use hdvol::sampling::{EntryDistribution, GammaSampler, LpBallModel, RngStream};
use hdvol::stats::{ks_distance_to_std_normal, Sample};

fn random_matrix(n: usize, rng: &mut RngStream) -> SquareMatrix {
    let sampler = EntryDistribution::Gaussian.sampler().unwrap();
    let data: Vec<f64> = (0..n * n).map(|_| sampler.sample(rng)).collect();
    SquareMatrix::from_raw(n, data).unwrap()
}

fn bench_log_abs_det(c: &mut Criterion) {
    let mut group = c.benchmark_group("log_abs_det");
    let mut rng = RngStream::new(1, 0);
    for n in [50usize, 100, 200, 400] {
        let m = random_matrix(n, &mut rng);
        group.throughput(Throughput::Elements((n * n * n / 3) as u64));
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| {
            b.iter(|| log_abs_det(black_box(m)))
        });
    }
    group.finish();
}

fn bench_unit_normal(c: &mut Criterion) {
    let mut group = c.benchmark_group("unit_normal");
    let sampler = EntryDistribution::Gaussian.sampler().unwrap();
    let mut rng = RngStream::new(2, 0);
    for n in [50usize, 100, 200] {
        let span: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..n + 1).map(|_| sampler.sample(&mut rng)).collect())
            .collect();
        group.bench_with_input(BenchmarkId::from_parameter(n), &span, |b, span| {
            b.iter(|| unit_normal(black_box(span)).unwrap())
        });
    }
    group.finish();
}

fn bench_entry_sampling(c: &mut Criterion) {
    let mut group = c.benchmark_group("entry_draws_10k");
    let kinds = [
        EntryDistribution::Rademacher,
        EntryDistribution::Gaussian,
        EntryDistribution::Laplace,
        EntryDistribution::PGeneralizedGaussian { p: 1.5 },
    ];
    for dist in kinds {
        let sampler = dist.sampler().unwrap();
        group.throughput(Throughput::Elements(10_000));
        group.bench_with_input(BenchmarkId::from_parameter(dist), &sampler, |b, s| {
            let mut rng = RngStream::new(3, 0);
            b.iter(|| {
                let mut acc = 0.0;
                for _ in 0..10_000 {
                    acc += s.sample(&mut rng);
                }
                acc
            })
        });
    }
    group.finish();
}

fn bench_gamma(c: &mut Criterion) {
    let mut group = c.benchmark_group("gamma_draws_10k");
    for shape in [0.5f64, 5.0] {
        let sampler = GammaSampler::new(shape, 1.0).unwrap();
        group.throughput(Throughput::Elements(10_000));
        group.bench_with_input(BenchmarkId::from_parameter(shape), &sampler, |b, s| {
            let mut rng = RngStream::new(4, 0);
            b.iter(|| {
                let mut acc = 0.0;
                for _ in 0..10_000 {
                    acc += s.sample(&mut rng);
                }
                acc
            })
        });
    }
    group.finish();
}

fn bench_lp_point(c: &mut Criterion) {
    let mut group = c.benchmark_group("lp_point_n100");
    for (p, m) in [(1.0f64, 0.0f64), (2.0, 1.0)] {
        let sampler = LpBallModel::new(100, p, m).unwrap().sampler().unwrap();
        let mut out = vec![0.0; 100];
        group.bench_function(BenchmarkId::from_parameter(format!("p{p}_m{m}")), |b| {
            let mut rng = RngStream::new(5, 0);
            b.iter(|| {
                sampler.sample_into(&mut rng, black_box(&mut out)).unwrap();
                out[0]
            })
        });
    }
    group.finish();
}

fn bench_ks(c: &mut Criterion) {
    let sampler = EntryDistribution::Gaussian.sampler().unwrap();
    let mut rng = RngStream::new(6, 0);
    let values: Vec<f64> = (0..100_000).map(|_| sampler.sample(&mut rng)).collect();
    let sample = Sample::new(values).unwrap();
    c.bench_function("ks_to_normal_100k", |b| {
        b.iter(|| ks_distance_to_std_normal(black_box(&sample)).unwrap())
    });
}

criterion_group!(
    benches,
    bench_log_abs_det,
    bench_unit_normal,
    bench_entry_sampling,
    bench_gamma,
    bench_lp_point,
    bench_ks
);
criterion_main!(benches);
