// SPDX-License-Identifier: Apache-2.0

mod support;

use citefield::centrality::{
    betweenness_centrality, closeness_all, eigenvector_centrality, Graph, PathMetric, DEFAULT_MAX_ITER, DEFAULT_TOL,
};
use citefield::Execution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use support::*;

#[test]
fn betweenness_matches_geodesic_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..150 {
        let n = rng.gen_range(1..=8);
        let p = rng.gen_range(0.1..0.7);
        let connected = rng.gen_bool(0.7);
        let edges = random_graph(&mut rng, n, p, connected);
        let g = Graph::unweighted(n, edges.iter().copied());
        let want = brute_force_betweenness(n, &edges);
        for exec in [Execution::Sequential, Execution::Parallel] {
            let got = betweenness_centrality(&g, PathMetric::Unweighted, exec);
            for v in 0..n {
                assert!((got[v] - want[v]).abs() < 1e-9, "{edges:?} node {v}: {} vs {}", got[v], want[v]);
            }
        }
    }
}

#[test]
fn closeness_matches_floyd_warshall() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..150 {
        let n = rng.gen_range(1..=10);
        let p = rng.gen_range(0.05..0.6);
        let edges = random_graph(&mut rng, n, p, false);
        let g = Graph::unweighted(n, edges.iter().copied());
        let want = apsp_closeness(n, &edges);
        let got = closeness_all(&g, PathMetric::Unweighted, Execution::Sequential);
        for v in 0..n {
            assert!((got[v] - want[v]).abs() < 1e-12);
        }
    }
}

#[test]
fn isolates_score_zero() {
    let g = Graph::unweighted(4, [(0, 1), (1, 2)]);
    assert_eq!(closeness_all(&g, PathMetric::Unweighted, Execution::Sequential)[3], 0.0);
    assert_eq!(betweenness_centrality(&g, PathMetric::Unweighted, Execution::Sequential)[3], 0.0);
}

fn weighted_symmetric(rng: &mut ChaCha8Rng, n: usize) -> (Vec<(usize, usize, f64)>, Vec<Vec<f64>>) {
    let edges: Vec<(usize, usize, f64)> = random_graph(rng, n, 0.3, true)
        .into_iter()
        .map(|(a, b)| (a, b, rng.gen_range(0.05..1.0)))
        .collect();
    let mut dense = vec![vec![0.0; n]; n];
    for &(a, b, w) in &edges {
        dense[a][b] = w;
        dense[b][a] = w;
    }
    (edges, dense)
}

#[test]
fn eigenvector_matches_dense_decomposition() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..30 {
        let n = rng.gen_range(2..=30);
        let (edges, dense) = weighted_symmetric(&mut rng, n);
        let e = eigenvector_centrality(&Graph::undirected(n, edges), DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
        assert!(e.residual < 1e-9);
        let (lambda, want) = dense_principal(&dense);
        assert!((e.eigenvalue - lambda).abs() < 1e-8 * lambda.max(1.0));
        // loadings are only as sharp as the spectral gap allows
        for v in 0..n {
            assert!((e.loadings[v] - want[v]).abs() < 1e-6, "node {v}");
        }
    }
}

#[test]
fn star_loadings() {
    for leaves in 2..12 {
        let g = Graph::unweighted(leaves + 1, (1..=leaves).map(|k| (0, k)));
        let e = eigenvector_centrality(&g, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
        let mut dense = vec![vec![0.0; leaves + 1]; leaves + 1];
        for k in 1..=leaves {
            dense[0][k] = 1.0;
            dense[k][0] = 1.0;
        }
        let (_, want) = dense_principal(&dense);
        for v in 0..=leaves {
            assert!((e.loadings[v] - want[v]).abs() < 1e-9);
        }
        assert!((e.loadings[1] - 1.0 / (leaves as f64).sqrt()).abs() < 1e-9);
    }
}

fn permuted(n: usize, edges: &[(usize, usize)], perm: &[usize]) -> Graph {
    Graph::unweighted(n, edges.iter().map(|&(a, b)| (perm[a], perm[b])))
}

#[test]
fn relabeling_permutes_scores() {
    use rand::seq::SliceRandom;
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..40 {
        let n = rng.gen_range(3..=12);
        let edges = random_graph(&mut rng, n, 0.35, true);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let g = Graph::unweighted(n, edges.iter().copied());
        let h = permuted(n, &edges, &perm);
        let bg = betweenness_centrality(&g, PathMetric::Unweighted, Execution::Sequential);
        let bh = betweenness_centrality(&h, PathMetric::Unweighted, Execution::Sequential);
        let cg = closeness_all(&g, PathMetric::Unweighted, Execution::Sequential);
        let ch = closeness_all(&h, PathMetric::Unweighted, Execution::Sequential);
        let eg = eigenvector_centrality(&g, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
        let eh = eigenvector_centrality(&h, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
        for v in 0..n {
            assert!((bg[v] - bh[perm[v]]).abs() < 1e-12);
            assert!((cg[v] - ch[perm[v]]).abs() < 1e-12);
            assert!((eg.loadings[v] - eh.loadings[perm[v]]).abs() < 1e-8);
        }
    }
}

#[test]
fn eigenvector_is_scale_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..20 {
        let n = rng.gen_range(2..=20);
        let (edges, _) = weighted_symmetric(&mut rng, n);
        let scaled: Vec<_> = edges.iter().map(|&(a, b, w)| (a, b, 7.5 * w)).collect();
        let e1 = eigenvector_centrality(&Graph::undirected(n, edges), DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
        let e2 = eigenvector_centrality(&Graph::undirected(n, scaled), DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
        assert!((e2.eigenvalue / e1.eigenvalue - 7.5).abs() < 1e-8);
        for v in 0..n {
            assert!((e1.loadings[v] - e2.loadings[v]).abs() < 1e-7);
        }
    }
}

#[test]
fn weighted_paths_equal_hops_under_unit_weights() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for _ in 0..40 {
        let n = rng.gen_range(1..=10);
        let edges = random_graph(&mut rng, n, 0.3, false);
        let g = Graph::undirected(n, edges.iter().map(|&(a, b)| (a, b, 1.0)));
        let hop = betweenness_centrality(&g, PathMetric::Unweighted, Execution::Sequential);
        let inv = betweenness_centrality(&g, PathMetric::InverseWeight, Execution::Sequential);
        let ch = closeness_all(&g, PathMetric::Unweighted, Execution::Sequential);
        let ci = closeness_all(&g, PathMetric::InverseWeight, Execution::Sequential);
        // Dijkstra settles ties in a different order, so only the last bits may differ
        for v in 0..n {
            assert!((hop[v] - inv[v]).abs() < 1e-12);
            assert!((ch[v] - ci[v]).abs() < 1e-12);
        }
    }
}
