use criterion::{criterion_group, criterion_main, Criterion, Throughput};
use std::hint::black_box;

use bindep::graph6::{parse_graph6, write_graph6};
use bindep::harness::{verify_graph, VerifyOptions};
use bindep::supply::enumerate_connected;

fn bench_enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    group.throughput(Throughput::Elements(26_704));
    group.bench_function("connected_n6", |b| {
        b.iter(|| enumerate_connected(black_box(6)).unwrap().count())
    });
    group.finish();
}

fn bench_codec(c: &mut Criterion) {
    let graphs: Vec<_> = enumerate_connected(6).unwrap().collect();
    let mut group = c.benchmark_group("graph6");
    group.throughput(Throughput::Elements(graphs.len() as u64));
    group.bench_function("roundtrip_n6", |b| {
        b.iter(|| {
            for g in &graphs {
                let enc = write_graph6(black_box(g)).unwrap();
                black_box(parse_graph6(enc.as_bytes()).unwrap());
            }
        })
    });
    group.finish();
}

fn bench_verify(c: &mut Criterion) {
    let graphs: Vec<_> = enumerate_connected(6).unwrap().take(512).collect();
    let opts = VerifyOptions::default();
    let mut group = c.benchmark_group("verify");
    group.throughput(Throughput::Elements(graphs.len() as u64));
    group.bench_function("records_n6_x512", |b| {
        b.iter(|| {
            for g in &graphs {
                black_box(verify_graph(black_box(g), &opts).unwrap());
            }
        })
    });
    group.finish();
}

criterion_group!(benches, bench_enumeration, bench_codec, bench_verify);
criterion_main!(benches);
