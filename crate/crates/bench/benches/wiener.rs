use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wiener_core::{wiener, wiener_reference, Tree};

fn algorithms(c: &mut Criterion) {
    let mut group = c.benchmark_group("wiener");
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for n in [100, 1_000, 10_000] {
        let tree = Tree::random(n, &mut rng).unwrap();
        group.bench_with_input(BenchmarkId::new("edge_contribution", n), &tree, |b, t| {
            b.iter(|| wiener(black_box(t)).unwrap())
        });
        if n <= 1_000 {
            group.bench_with_input(BenchmarkId::new("all_pairs_bfs", n), &tree, |b, t| {
                b.iter(|| wiener_reference(black_box(t)).unwrap())
            });
        }
    }
    group.finish();
}

fn path_million(c: &mut Criterion) {
    let path = Tree::path(1_000_000).unwrap();
    c.bench_function("wiener path 10^6", |b| {
        b.iter(|| wiener(black_box(&path)).unwrap())
    });
}

criterion_group!(benches, algorithms, path_million);
criterion_main!(benches);
