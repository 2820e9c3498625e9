//! Sequential versus parallel execution of the data-parallel kernels.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use tightspan::complex::enumerate_tight_span;
use tightspan::exec;
use tightspan::metric::{check_path_condition, check_tree_condition};
use tightspan::random::{random_distance, rng, EntryShape};
use tightspan::rank::tropical_rank;
use tightspan::DirectedDistance;

fn instances(n: usize, count: usize) -> Vec<DirectedDistance> {
    let mut r = rng(42);
    (0..count).map(|_| random_distance(&mut r, n, &EntryShape::default())).collect()
}

fn compare<F: Fn() + Copy>(c: &mut Criterion, group: &str, param: usize, f: F) {
    let mut g = c.benchmark_group(group);
    g.sample_size(10);
    g.bench_with_input(BenchmarkId::new("sequential", param), &param, |b, _| b.iter(|| exec::sequential(f)));
    g.bench_with_input(BenchmarkId::new("parallel", param), &param, |b, _| b.iter(f));
    g.finish();
}

fn bench(c: &mut Criterion) {
    for n in [4, 5] {
        let mus = instances(n, 4);
        compare(c, "enumerate_tight_span", n, || {
            for mu in &mus {
                black_box(enumerate_tight_span(mu).unwrap());
            }
        });
    }
    let mus = instances(7, 8);
    compare(c, "tropical_rank", 7, || {
        for mu in &mus {
            black_box(tropical_rank(mu));
        }
    });
    let mus = instances(9, 8);
    compare(c, "conditions", 9, || {
        for mu in &mus {
            black_box(check_path_condition(mu));
            black_box(check_tree_condition(mu));
        }
    });
}

criterion_group!(benches, bench);
criterion_main!(benches);
