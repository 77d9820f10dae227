use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use rotdist::families;
use rotdist::search::{diameter, dist_i_on, distance, DenseGraph};
use rotdist::Tree;

fn single_pair(c: &mut Criterion) {
    let mut g = c.benchmark_group("bidirectional");
    for n in [8, 10, 12] {
        let f = families::conjecture_pair(n).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(n), &f, |b, f| {
            b.iter(|| distance(black_box(&f.source), black_box(&f.target)).unwrap().distance)
        });
    }
    g.finish();
}

fn dense(c: &mut Criterion) {
    let mut g = c.benchmark_group("dense");
    g.sample_size(10);
    for n in [7, 8, 9] {
        g.bench_with_input(BenchmarkId::new("build", n), &n, |b, &n| {
            b.iter(|| DenseGraph::build(n, false).unwrap().vertex_count())
        });
        g.bench_with_input(BenchmarkId::new("diameter", n), &n, |b, &n| {
            b.iter(|| diameter(n, false).unwrap().distance)
        });
    }
    let graph = DenseGraph::build(9, false).unwrap();
    let src = Tree::right_comb(9);
    g.bench_function("bfs/9", |b| b.iter(|| graph.bfs(graph.index(&src).unwrap())));
    g.finish();
}

fn zero_one(c: &mut Criterion) {
    let f = families::tricomb_core(4).unwrap();
    let graph = DenseGraph::build(f.source.size(), false).unwrap();
    let set = f.i.clone().unwrap();
    c.bench_function("dist_i/tricomb-core(4)", |b| {
        b.iter(|| dist_i_on(&graph, &f.source, &f.target, &set).unwrap().distance)
    });
}

criterion_group!(benches, single_pair, dense, zero_one);
criterion_main!(benches);
