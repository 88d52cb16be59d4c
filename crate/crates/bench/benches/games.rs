use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use simplegames::canonical::canonical_decompose;
use simplegames::composition::find_decompositions;
use simplegames::desirability::is_complete;
use simplegames::enumerate::enumerate_games;
use simplegames::weights::{farkas_certificate, synthesize_weights};
use simplegames_bench::{security_council, tripartite, two_pairs};

fn weights(c: &mut Criterion) {
    let unsc = security_council();
    let t = tripartite();
    c.bench_function("synthesize_weights/security_council", |b| {
        b.iter(|| synthesize_weights(black_box(&unsc)))
    });
    c.bench_function("synthesize_weights/tripartite", |b| {
        b.iter(|| synthesize_weights(black_box(&t)))
    });
    let pairs = two_pairs();
    c.bench_function("farkas_certificate/two_pairs", |b| {
        b.iter(|| farkas_certificate(black_box(&pairs)))
    });
}

fn structure(c: &mut Criterion) {
    let unsc = security_council();
    let t = tripartite();
    c.bench_function("is_complete/security_council", |b| {
        b.iter(|| is_complete(black_box(&unsc)))
    });
    c.bench_function("find_decompositions/tripartite", |b| {
        b.iter(|| find_decompositions(black_box(&t)))
    });
    c.bench_function("canonical_decompose/security_council", |b| {
        b.iter(|| canonical_decompose(black_box(&unsc)))
    });
}

fn enumeration(c: &mut Criterion) {
    c.bench_function("enumerate_games/4", |b| {
        b.iter(|| enumerate_games(black_box(4), false).unwrap().count())
    });
}

criterion_group!(benches, weights, structure, enumeration);
criterion_main!(benches);
