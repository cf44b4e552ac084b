use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use std::hint::black_box;

use bindep::graph::Graph;
use bindep::solvers::{alpha, alpha_b, enumerate_optimal_supports, naive_alpha_b};
use bindep_bench::{big_g0_member, random_instance};

fn bench_alpha(c: &mut Criterion) {
    let mut group = c.benchmark_group("alpha");
    for n in [20, 30, 40] {
        let g = random_instance(n);
        group.bench_function(format!("gnp_n{n}"), |b| {
            b.iter(|| alpha(black_box(&g)).unwrap().value)
        });
    }
    group.finish();
}

fn bench_alpha_b(c: &mut Criterion) {
    let mut group = c.benchmark_group("alpha_b");
    for n in [12, 18, 24] {
        let g = random_instance(n);
        group.bench_function(format!("gnp_n{n}"), |b| {
            b.iter(|| alpha_b(black_box(&g)).unwrap().value)
        });
    }
    let path = Graph::path(30);
    group.bench_function("path_n30", |b| {
        b.iter(|| alpha_b(black_box(&path)).unwrap().value)
    });
    let member = big_g0_member();
    group.bench_function(format!("g0_member_n{}", member.n()), |b| {
        b.iter(|| alpha_b(black_box(&member)).unwrap().value)
    });
    group.finish();
}

fn bench_supports(c: &mut Criterion) {
    let g = random_instance(16);
    c.bench_function("enumerate_optimal_supports_n16", |b| {
        b.iter_batched(
            || g.clone(),
            |g| enumerate_optimal_supports(black_box(&g)).unwrap().len(),
            BatchSize::SmallInput,
        )
    });
}

fn bench_naive(c: &mut Criterion) {
    let g = Graph::path(7);
    c.bench_function("naive_alpha_b_p7", |b| {
        b.iter(|| naive_alpha_b(black_box(&g)).unwrap())
    });
}

criterion_group!(benches, bench_alpha, bench_alpha_b, bench_supports, bench_naive);
criterion_main!(benches);
