// SPDX-License-Identifier: Apache-2.0

//! Sequential vs parallel timings of the three hot kernels.
//!
//! Without the `parallel` feature both variants run on one thread, which makes
//! the fallback overhead visible.

use std::collections::BTreeSet;
use std::hint::black_box;

use citefield::centrality::{betweenness_centrality, Graph, PathMetric};
use citefield::corpus::CitationMatrix;
use citefield::environment::{extract_union, EnvironmentSpec, Mode};
use citefield::render::{layout, LayoutConfig};
use citefield::similarity::{build_graph, Measure, ProfileSet, SimilarityGraph};
use citefield::Execution;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn random_graph(n: usize, mean_degree: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = BTreeSet::new();
    while seen.len() < n * mean_degree / 2 {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a != b {
            seen.insert((a.min(b), a.max(b)));
        }
    }
    Graph::unweighted(n, seen)
}

fn profiles(size: usize, seed: u64) -> ProfileSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let labels: Vec<String> = (0..size).map(|k| format!("J{k}")).collect();
    let dense: Vec<Vec<u64>> = (0..size)
        .map(|_| (0..size).map(|_| if rng.gen_bool(0.3) { rng.gen_range(1..50) } else { 0 }).collect())
        .collect();
    let m = CitationMatrix::from_dense(2006, &labels, &dense).unwrap();
    let env = extract_union(&m, &EnvironmentSpec::new(0..size, Mode::Cited), Execution::Sequential).unwrap();
    ProfileSet::from_environment(&env, false)
}

fn betweenness(c: &mut Criterion) {
    let mut group = c.benchmark_group("betweenness");
    group.sample_size(10);
    for n in [500, 2000] {
        let g = random_graph(n, 10, 1);
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, n), &g, |b, g| {
                b.iter(|| betweenness_centrality(black_box(g), PathMetric::Unweighted, exec))
            });
        }
    }
    group.finish();
}

fn cosine_graph(c: &mut Criterion) {
    let mut group = c.benchmark_group("all_pairs_cosine");
    for size in [200, 800] {
        let p = profiles(size, 2);
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, size), &p, |b, p| {
                b.iter(|| build_graph(black_box(p), 0.2, Measure::Cosine, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn spring_layout(c: &mut Criterion) {
    let mut group = c.benchmark_group("layout");
    group.sample_size(10);
    let g: SimilarityGraph = build_graph(&profiles(200, 3), 0.3, Measure::Cosine, Execution::Parallel).unwrap();
    let config = LayoutConfig::default();
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new(name, g.n()), &g, |b, g| {
            b.iter(|| layout(black_box(g), 1, &config, exec))
        });
    }
    group.finish();
}

criterion_group!(kernels, betweenness, cosine_graph, spring_layout);
criterion_main!(kernels);
