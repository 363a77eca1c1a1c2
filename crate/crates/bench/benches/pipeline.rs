use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use vinesieve::analysis::profile;
use vinesieve::numeric::perron::perron_eigenpair;
use vinesieve::obstruction::{screen_translate, VineScreener, DEFAULT_PRIME_BOUND};
use vinesieve::poly::charpoly::char_poly;
use vinesieve_bench::samples;

fn bench_profile(c: &mut Criterion) {
    let mut group = c.benchmark_group("profile");
    for g in samples() {
        group.bench_with_input(BenchmarkId::from_parameter(g.label().unwrap()), &g, |b, g| {
            b.iter(|| profile(black_box(g)).unwrap())
        });
    }
    group.finish();
}

fn bench_char_poly(c: &mut Criterion) {
    let mut group = c.benchmark_group("char_poly");
    for g in samples() {
        let m = g.translate(40).adjacency_matrix();
        group.bench_with_input(BenchmarkId::from_parameter(g.label().unwrap()), &m, |b, m| {
            b.iter(|| char_poly(black_box(m)))
        });
    }
    group.finish();
}

fn bench_screen(c: &mut Criterion) {
    let mut group = c.benchmark_group("screen");
    group.sample_size(10);
    for g in samples() {
        let p = profile(&g).unwrap();
        let j = p.max_translate() / 2;
        group.bench_with_input(BenchmarkId::new("screener", g.label().unwrap()), &j, |b, &j| {
            b.iter(|| VineScreener::new(&g, &p, DEFAULT_PRIME_BOUND).screen(j).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("plain", g.label().unwrap()), &j, |b, &j| {
            b.iter(|| screen_translate(&g, j, DEFAULT_PRIME_BOUND).unwrap())
        });
    }
    group.finish();
}

fn bench_perron(c: &mut Criterion) {
    let mut group = c.benchmark_group("perron_128_digits");
    for g in samples() {
        let m = g.adjacency_matrix();
        group.bench_with_input(BenchmarkId::from_parameter(g.label().unwrap()), &m, |b, m| {
            b.iter(|| perron_eigenpair(black_box(m), 128).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_profile, bench_char_poly, bench_screen, bench_perron);
criterion_main!(benches);
