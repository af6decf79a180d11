//! Parallel versus sequential throughput on the hot sampling loops.
//!
//! The `parallel` feature (default) routes the chunked sampling helpers
//! through rayon; the `*_seq` twins always run single-threaded on the
//! same chunk layout, so the two sides compute bit-identical results.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use pql_core::geom::calibrate::{default_box, max_defect_raw, max_defect_raw_seq};
use pql_core::geom::{displacement_min, Isometry, SearchDomain};
use pql_core::par::{sampled_fold, sampled_fold_seq};

fn bench_four_point_scan(c: &mut Criterion) {
    let boxx = default_box();
    let mut group = c.benchmark_group("four_point_scan");
    for samples in [20_000u64, 100_000] {
        group.bench_with_input(
            BenchmarkId::new("parallel", samples),
            &samples,
            |b, &n| b.iter(|| max_defect_raw(n, 7, &boxx)),
        );
        group.bench_with_input(
            BenchmarkId::new("sequential", samples),
            &samples,
            |b, &n| b.iter(|| max_defect_raw_seq(n, 7, &boxx)),
        );
    }
    group.finish();
}

fn bench_chunked_fold(c: &mut Criterion) {
    use rand::Rng;
    let chunk = |rng: &mut rand_chacha::ChaCha8Rng, count: u64| {
        (0..count)
            .map(|_| {
                let x: f64 = rng.gen_range(-4.0..4.0);
                (x.sinh() / 2.0).asinh()
            })
            .fold(f64::NEG_INFINITY, f64::max)
    };
    let mut group = c.benchmark_group("chunked_fold");
    group.bench_function("parallel", |b| {
        b.iter(|| sampled_fold(200_000, 3, chunk, f64::max, f64::NEG_INFINITY))
    });
    group.bench_function("sequential", |b| {
        b.iter(|| sampled_fold_seq(200_000, 3, chunk, f64::max, f64::NEG_INFINITY))
    });
    group.finish();
}

fn bench_displacement_grid(c: &mut Criterion) {
    // the grid scan parallelises over rows under the feature flag
    let m = Isometry::new([[2.0, 0.3], [0.1, 0.6]]).unwrap();
    let domain = SearchDomain::new(-3.0, 3.0, 0.2, 8.0).unwrap().with_grid(96, 4);
    c.bench_function("displacement_grid", |b| {
        b.iter(|| displacement_min(&m, domain).unwrap())
    });
}

criterion_group!(
    benches,
    bench_four_point_scan,
    bench_chunked_fold,
    bench_displacement_grid
);
criterion_main!(benches);
