// SPDX-License-Identifier: Apache-2.0

//! Slow reference implementations used as oracles. They work on plain edge
//! lists and share no code with the library.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;

/// Random simple undirected graph. With `connected`, a random spanning tree
/// is laid down first.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64, connected: bool) -> Vec<(usize, usize)> {
    let mut present = vec![vec![false; n]; n];
    let mut edges = Vec::new();
    let mut push = |a: usize, b: usize, edges: &mut Vec<(usize, usize)>| {
        let (a, b) = (a.min(b), a.max(b));
        if a != b && !present[a][b] {
            present[a][b] = true;
            edges.push((a, b));
        }
    };
    if connected && n > 1 {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        for k in 1..n {
            let parent = order[rng.gen_range(0..k)];
            push(order[k], parent, &mut edges);
        }
    }
    for a in 0..n {
        for b in (a + 1)..n {
            if rng.gen_bool(p) {
                push(a, b, &mut edges);
            }
        }
    }
    edges
}

fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    adj
}

/// Hop distances by Floyd-Warshall; `usize::MAX` when unreachable.
pub fn all_pairs_hops(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let inf = usize::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0;
    }
    for &(a, b) in edges {
        d[a][b] = 1;
        d[b][a] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    for row in &mut d {
        for x in row.iter_mut() {
            if *x >= inf {
                *x = usize::MAX;
            }
        }
    }
    d
}

/// Every geodesic from `s` to `t`, as node sequences.
pub fn geodesics(n: usize, edges: &[(usize, usize)], s: usize, t: usize) -> Vec<Vec<usize>> {
    let d = all_pairs_hops(n, edges);
    let adj = adjacency(n, edges);
    let mut out = Vec::new();
    if d[s][t] == usize::MAX {
        return out;
    }
    let mut path = vec![s];
    fn walk(
        adj: &[Vec<usize>],
        d: &[Vec<usize>],
        t: usize,
        path: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let v = *path.last().unwrap();
        if v == t {
            out.push(path.clone());
            return;
        }
        for &u in &adj[v] {
            if d[u][t] != usize::MAX && d[u][t] + 1 == d[v][t] {
                path.push(u);
                walk(adj, d, t, path, out);
                path.pop();
            }
        }
    }
    walk(&adj, &d, t, &mut path, &mut out);
    out
}

/// Share of geodesics between other pairs passing through each node,
/// normalized by the number of such pairs, found by listing every geodesic.
pub fn brute_force_betweenness(n: usize, edges: &[(usize, usize)]) -> Vec<f64> {
    let mut raw = vec![0.0; n];
    for s in 0..n {
        for t in (s + 1)..n {
            let paths = geodesics(n, edges, s, t);
            if paths.is_empty() {
                continue;
            }
            let total = paths.len() as f64;
            for (v, acc) in raw.iter_mut().enumerate() {
                if v == s || v == t {
                    continue;
                }
                let through = paths.iter().filter(|p| p.contains(&v)).count() as f64;
                *acc += through / total;
            }
        }
    }
    if n < 3 {
        return vec![0.0; n];
    }
    let pairs = ((n - 1) * (n - 2)) as f64 / 2.0;
    raw.iter().map(|x| x / pairs).collect()
}

/// `(r / (n - 1)) * (r / D)` with `r` reachable nodes at total distance `D`.
pub fn apsp_closeness(n: usize, edges: &[(usize, usize)]) -> Vec<f64> {
    let d = all_pairs_hops(n, edges);
    (0..n)
        .map(|v| {
            let reach: Vec<usize> = (0..n).filter(|&u| u != v && d[v][u] != usize::MAX).map(|u| d[v][u]).collect();
            if reach.is_empty() {
                return 0.0;
            }
            let r = reach.len() as f64;
            let total: usize = reach.iter().sum();
            (r / (n - 1) as f64) * (r / total as f64)
        })
        .collect()
}

/// Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.
/// Returns `(eigenvalues, eigenvectors as columns)`.
pub fn jacobi_eigen(a: &[Vec<f64>]) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = a.len();
    let mut a: Vec<Vec<f64>> = a.to_vec();
    let mut v = vec![vec![0.0; n]; n];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let (vkp, vkq) = (row[p], row[q]);
                    row[p] = c * vkp - s * vkq;
                    row[q] = s * vkp + c * vkq;
                }
            }
        }
    }
    ((0..n).map(|i| a[i][i]).collect(), v)
}

/// Principal eigenvector of a symmetric non-negative matrix, scaled to a
/// largest entry of 1.
pub fn dense_principal(a: &[Vec<f64>]) -> (f64, Vec<f64>) {
    let (values, vectors) = jacobi_eigen(a);
    let k = (0..values.len())
        .max_by(|&x, &y| values[x].total_cmp(&values[y]))
        .unwrap();
    let col: Vec<f64> = vectors.iter().map(|row| row[k].abs()).collect();
    let max = col.iter().cloned().fold(0.0, f64::max);
    (values[k], col.iter().map(|x| x / max).collect())
}

/// Cosine by the textbook formula.
pub fn cosine_oracle(x: &[f64], y: &[f64]) -> f64 {
    let dot: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    let nx: f64 = x.iter().map(|a| a * a).sum::<f64>().sqrt();
    let ny: f64 = y.iter().map(|a| a * a).sum::<f64>().sqrt();
    dot / (nx * ny)
}

/// Sort-descending-and-scan h-index.
pub fn h_index_oracle(counts: &[u64]) -> usize {
    let mut sorted = counts.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    sorted.iter().enumerate().take_while(|&(i, &c)| c as usize > i).count()
}
