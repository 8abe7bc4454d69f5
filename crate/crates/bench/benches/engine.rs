use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use solenoid_bench::{annihilation_order, cover_rank, fit_jordan3, omega_identity, pbw_reversed_word};

fn engine(c: &mut Criterion) {
    for n in 1..=2 {
        c.bench_with_input(BenchmarkId::new("pbw-reversed-word", n), &n, |b, &n| b.iter(|| pbw_reversed_word(n)));
        c.bench_with_input(BenchmarkId::new("omega-identity-r2", n), &n, |b, &n| b.iter(|| omega_identity(n)));
        c.bench_with_input(BenchmarkId::new("annihilation-order", n), &n, |b, &n| b.iter(|| annihilation_order(n)));
        c.bench_with_input(BenchmarkId::new("fit-jordan3", n), &n, |b, &n| b.iter(|| fit_jordan3(n)));
    }
    let mut slow = c.benchmark_group("cover");
    slow.sample_size(10);
    for n in 1..=2 {
        slow.bench_with_input(BenchmarkId::new("weight-space-rank", n), &n, |b, &n| b.iter(|| cover_rank(n)));
    }
    slow.finish();
}

criterion_group!(benches, engine);
criterion_main!(benches);
