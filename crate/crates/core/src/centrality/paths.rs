// SPDX-License-Identifier: Apache-2.0

//! Single-source shortest paths with geodesic counts.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, VecDeque};

use super::{Graph, PathMetric};

/// Relative slack under which two weighted path lengths count as equal.
const TIE_EPS: f64 = 1e-12;

/// Reusable per-source buffers.
pub(super) struct ShortestPaths {
    /// Reached nodes in non-decreasing distance order, source first.
    pub order: Vec<usize>,
    pub dist: Vec<f64>,
    /// Number of geodesics from the source.
    pub sigma: Vec<f64>,
    /// Predecessor lists packed at the graph's in-adjacency offsets.
    pred_buf: Vec<usize>,
    pred_start: Vec<usize>,
    pred_len: Vec<usize>,
    queue: VecDeque<usize>,
    heap: BinaryHeap<HeapEntry>,
    settled: Vec<bool>,
}

#[derive(PartialEq)]
struct HeapEntry {
    dist: f64,
    node: usize,
}

impl Eq for HeapEntry {}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        // min-heap on distance, then on node id
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl ShortestPaths {
    pub fn new(n: usize) -> Self {
        Self {
            order: Vec::with_capacity(n),
            dist: vec![f64::INFINITY; n],
            sigma: vec![0.0; n],
            pred_buf: Vec::new(),
            pred_start: vec![0; n],
            pred_len: vec![0; n],
            queue: VecDeque::new(),
            heap: BinaryHeap::new(),
            settled: vec![false; n],
        }
    }

    fn reset(&mut self) {
        for &v in &self.order {
            self.dist[v] = f64::INFINITY;
            self.sigma[v] = 0.0;
            self.pred_len[v] = 0;
            self.settled[v] = false;
        }
        self.order.clear();
    }

    /// Predecessors of `v` on geodesics from the last source.
    pub fn preds(&self, v: usize) -> &[usize] {
        let start = self.pred_start[v];
        &self.pred_buf[start..start + self.pred_len[v]]
    }

    fn push_pred(&mut self, w: usize, v: usize) {
        self.pred_buf[self.pred_start[w] + self.pred_len[w]] = v;
        self.pred_len[w] += 1;
    }

    /// Recomputes everything for `source`. Predecessor lists are filled only
    /// when `track_preds` is set.
    pub fn run(&mut self, g: &Graph, source: usize, metric: PathMetric, track_preds: bool) {
        self.reset();
        if track_preds && self.pred_buf.len() != g.in_entry_count() {
            self.pred_buf = vec![0; g.in_entry_count()];
            for v in 0..g.n() {
                self.pred_start[v] = g.in_offset(v);
            }
        }
        match metric {
            PathMetric::Unweighted => self.bfs(g, source, track_preds),
            PathMetric::InverseWeight => self.dijkstra(g, source, track_preds),
        }
    }

    fn bfs(&mut self, g: &Graph, source: usize, track_preds: bool) {
        self.dist[source] = 0.0;
        self.sigma[source] = 1.0;
        self.queue.push_back(source);
        while let Some(v) = self.queue.pop_front() {
            self.order.push(v);
            let next = self.dist[v] + 1.0;
            for &(w, _) in g.neighbors(v) {
                if self.dist[w] == f64::INFINITY {
                    self.dist[w] = next;
                    self.queue.push_back(w);
                }
                if self.dist[w] == next {
                    self.sigma[w] += self.sigma[v];
                    if track_preds {
                        self.push_pred(w, v);
                    }
                }
            }
        }
    }

    fn dijkstra(&mut self, g: &Graph, source: usize, track_preds: bool) {
        self.dist[source] = 0.0;
        self.sigma[source] = 1.0;
        self.heap.push(HeapEntry {
            dist: 0.0,
            node: source,
        });
        while let Some(HeapEntry { dist, node: v }) = self.heap.pop() {
            if self.settled[v] || dist > self.dist[v] {
                continue;
            }
            self.settled[v] = true;
            self.order.push(v);
            for &(w, weight) in g.neighbors(v) {
                if self.settled[w] || weight <= 0.0 {
                    continue;
                }
                let candidate = dist + 1.0 / weight;
                let current = self.dist[w];
                let tie = current.is_finite() && (candidate - current).abs() <= TIE_EPS * candidate.max(current);
                if tie {
                    self.sigma[w] += self.sigma[v];
                    if track_preds {
                        self.push_pred(w, v);
                    }
                } else if candidate < current {
                    self.dist[w] = candidate;
                    self.sigma[w] = self.sigma[v];
                    if track_preds {
                        self.pred_len[w] = 0;
                        self.push_pred(w, v);
                    }
                    self.heap.push(HeapEntry {
                        dist: candidate,
                        node: w,
                    });
                }
            }
        }
    }
}
