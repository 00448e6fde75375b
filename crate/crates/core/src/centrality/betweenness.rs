// SPDX-License-Identifier: Apache-2.0

//! Brandes' single-source accumulation.
//!
//! Sources are grouped into fixed blocks of [`SOURCE_BLOCK`]. Each block sums
//! its sources' dependencies sequentially, and block totals are added in block
//! order, so the result is bit-identical for any thread count.

use super::paths::ShortestPaths;
use super::{Graph, PathMetric};
use crate::Execution;

const SOURCE_BLOCK: usize = 32;
/// Blocks evaluated per round; bounds memory at `BLOCKS_PER_ROUND * n` floats.
const BLOCKS_PER_ROUND: usize = 64;

fn accumulate_block(g: &Graph, sources: std::ops::Range<usize>, metric: PathMetric) -> Vec<f64> {
    let n = g.n();
    let mut paths = ShortestPaths::new(n);
    let mut delta = vec![0.0f64; n];
    let mut acc = vec![0.0f64; n];
    for s in sources {
        paths.run(g, s, metric, true);
        for &v in &paths.order {
            delta[v] = 0.0;
        }
        for &w in paths.order.iter().rev() {
            let coefficient = (1.0 + delta[w]) / paths.sigma[w];
            for &v in paths.preds(w) {
                delta[v] += paths.sigma[v] * coefficient;
            }
            if w != s {
                acc[w] += delta[w];
            }
        }
    }
    acc
}

/// Raw betweenness `sum over pairs (i, j) of g_ikj / g_ij`, with `i, j, k`
/// distinct. Undirected graphs count each unordered pair once.
pub fn betweenness_raw(g: &Graph, metric: PathMetric, exec: Execution) -> Vec<f64> {
    let n = g.n();
    let blocks = n.div_ceil(SOURCE_BLOCK);
    let mut total = vec![0.0f64; n];
    let mut first = 0;
    while first < blocks {
        let count = BLOCKS_PER_ROUND.min(blocks - first);
        let partials = exec.map_range(count, |b| {
            let start = (first + b) * SOURCE_BLOCK;
            accumulate_block(g, start..(start + SOURCE_BLOCK).min(n), metric)
        });
        for partial in partials {
            for (t, p) in total.iter_mut().zip(partial) {
                *t += p;
            }
        }
        first += count;
    }
    if !g.is_directed() {
        for t in &mut total {
            *t /= 2.0;
        }
    }
    total
}

/// Betweenness as a fraction of the pairs that could route through a node:
/// `(n - 1)(n - 2) / 2` for undirected graphs and `(n - 1)(n - 2)` for
/// directed ones. All zeros when `n < 3`.
pub fn betweenness_centrality(g: &Graph, metric: PathMetric, exec: Execution) -> Vec<f64> {
    let n = g.n();
    if n < 3 {
        return vec![0.0; n];
    }
    let mut pairs = ((n - 1) * (n - 2)) as f64;
    if !g.is_directed() {
        pairs /= 2.0;
    }
    betweenness_raw(g, metric, exec)
        .into_iter()
        .map(|b| (b / pairs).clamp(0.0, 1.0))
        .collect()
}
