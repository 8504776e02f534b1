//! One worker against the full pool on the per-source and per-pair loops.
//! Without the `parallel` feature only the sequential numbers are reported.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pn_spanner::generate::random_euclidean;
use pn_spanner::{
    build_counterexample_graph, build_hsp, is_pn_graph, max_eps, shortest_path_lengths, stretch,
    symmetrize,
};

#[cfg(feature = "parallel")]
fn modes() -> Vec<(String, rayon::ThreadPool)> {
    let all = std::thread::available_parallelism().map_or(1, |n| n.get());
    let mut counts = vec![1, all];
    counts.dedup();
    counts
        .into_iter()
        .map(|t| {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .unwrap();
            (format!("threads={t}"), pool)
        })
        .collect()
}

#[cfg(feature = "parallel")]
fn in_mode<T: Send>(pool: &rayon::ThreadPool, f: impl FnOnce() -> T + Send) -> T {
    pool.install(f)
}

#[cfg(not(feature = "parallel"))]
fn modes() -> Vec<(String, ())> {
    vec![("sequential".to_string(), ())]
}

#[cfg(not(feature = "parallel"))]
fn in_mode<T>(_: &(), f: impl FnOnce() -> T) -> T {
    f()
}

fn euclidean(c: &mut Criterion) {
    let modes = modes();
    for n in [200, 400] {
        let space = random_euclidean(n, 3, 11).unwrap();
        let hsp = build_hsp(&space).unwrap().graph;
        let undirected = symmetrize(&hsp);

        let mut group = c.benchmark_group(format!("hsp_build/n={n}"));
        group.sample_size(10);
        for (label, pool) in &modes {
            group.bench_function(BenchmarkId::from_parameter(label), |b| {
                b.iter(|| in_mode(pool, || build_hsp(&space).unwrap()))
            });
        }
        group.finish();

        let mut group = c.benchmark_group(format!("pn_check/n={n}"));
        group.sample_size(10);
        for (label, pool) in &modes {
            group.bench_function(BenchmarkId::from_parameter(label), |b| {
                b.iter(|| in_mode(pool, || is_pn_graph(&hsp, &space).unwrap()))
            });
        }
        group.finish();

        let mut group = c.benchmark_group(format!("apsp/n={n}"));
        group.sample_size(10);
        for (label, pool) in &modes {
            group.bench_function(BenchmarkId::from_parameter(label), |b| {
                b.iter(|| in_mode(pool, || shortest_path_lengths(&undirected)))
            });
        }
        group.finish();
    }
}

fn exact(c: &mut Criterion) {
    let modes = modes();
    let (g, space) = build_counterexample_graph(30, max_eps(30)).unwrap();
    let mut group = c.benchmark_group("counterexample_stretch/i=30");
    group.sample_size(10);
    for (label, pool) in &modes {
        group.bench_function(BenchmarkId::from_parameter(label), |b| {
            b.iter(|| in_mode(pool, || stretch(&g, &space).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, euclidean, exact);
criterion_main!(benches);
