use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ecsym_bench::sample_curves;
use ecsym_core::arith::next_prime;
use ecsym_core::frobenius::{ap, FrobeniusEngine, TraceVector};
use ecsym_core::sieve::build_prime_window;
use ecsym_core::RationalEC;
use std::hint::black_box;

fn single_prime(c: &mut Criterion) {
    let e = sample_curves()[0].minimal_model();
    let mut g = c.benchmark_group("ap");
    for bits in [12u32, 20, 30, 40] {
        let l = next_prime(1 << bits);
        g.bench_with_input(BenchmarkId::from_parameter(format!("2^{bits}")), &l, |b, &l| {
            b.iter(|| ap(black_box(&e), l))
        });
    }
    g.finish();
}

fn cm_fast_path(c: &mut Criterion) {
    let e = RationalEC::from_i64([0, 0, 0, 0, 1]).unwrap();
    let eng = FrobeniusEngine::new(&e);
    let l = next_prime(10_000_000_000);
    c.bench_function("ap/cm-j0-1e10", |b| b.iter(|| eng.ap(black_box(l))));
}

fn window(c: &mut Criterion) {
    let curves: Vec<RationalEC> = sample_curves().iter().map(|e| e.minimal_model()).collect();
    let primes = build_prime_window(500_000, 50);
    c.bench_function("trace-window/4-curves-50-primes", |b| {
        b.iter(|| {
            for e in &curves {
                black_box(TraceVector::compute(e, &primes));
            }
        })
    });
}

criterion_group!(benches, single_prime, cm_fast_path, window);
criterion_main!(benches);
