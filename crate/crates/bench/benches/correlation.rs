use std::hint::black_box;

use barker_bench::random_sequence;
use barker_core::correlation::{acf_packed, acf_reference, periodic_acf};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn acf_routes(c: &mut Criterion) {
    let mut group = c.benchmark_group("acf");
    for n in [13usize, 64, 256, 1024] {
        let seq = random_sequence(n, n as u64);
        group.bench_with_input(BenchmarkId::new("reference", n), &seq, |b, s| {
            b.iter(|| acf_reference(black_box(s)))
        });
        group.bench_with_input(BenchmarkId::new("packed", n), &seq, |b, s| {
            b.iter(|| acf_packed(black_box(s)))
        });
    }
    group.finish();
}

fn periodic(c: &mut Criterion) {
    let seq = random_sequence(256, 1);
    c.bench_function("periodic_acf/256", |b| b.iter(|| periodic_acf(black_box(&seq))));
}

criterion_group!(benches, acf_routes, periodic);
criterion_main!(benches);
