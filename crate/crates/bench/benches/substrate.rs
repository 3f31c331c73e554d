//! Arithmetic substrate: sieve construction and batch factorization shapes
//! that dominate the sweeps.

use criterion::{criterion_group, criterion_main, Criterion};
use esl_core::numkit::{factorize, factorize_wide, sieve_spf};
use std::hint::black_box;

fn bench_sieve(c: &mut Criterion) {
    c.bench_function("sieve_spf_1e6", |b| {
        b.iter(|| sieve_spf(black_box(1_000_000)).unwrap().limit())
    });
}

fn bench_factorize(c: &mut Criterion) {
    let table = sieve_spf(1 << 20).unwrap();
    c.bench_function("factorize_table_block", |b| {
        b.iter(|| {
            let mut acc = 0u64;
            for n in 500_000u64..502_048 {
                acc += factorize(black_box(n), Some(&table)).tau();
            }
            acc
        })
    });
    c.bench_function("factorize_quadratic_values", |b| {
        // the 4a^2 d + 1 shapes the Type I sweeps feed the factorizer
        b.iter(|| {
            let mut acc = 0u64;
            for a in 1_000u64..1_128 {
                acc += factorize_wide(black_box(4 * (a as u128) * (a as u128) * 3 + 1)).tau();
            }
            acc
        })
    });
}

criterion_group!(benches, bench_sieve, bench_factorize);
criterion_main!(benches);
