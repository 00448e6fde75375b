// SPDX-License-Identifier: Apache-2.0

use crate::similarity::SimilarityGraph;

/// Weighted adjacency lists with neighbors sorted by id, stored as flat
/// offset/entry arrays.
///
/// Self-loops are dropped and parallel edges collapse to the first one given.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    out_offsets: Vec<usize>,
    out_entries: Vec<(usize, f64)>,
    in_offsets: Vec<usize>,
    in_entries: Vec<(usize, f64)>,
    directed: bool,
}

fn flatten(lists: Vec<Vec<(usize, f64)>>) -> (Vec<usize>, Vec<(usize, f64)>) {
    let mut offsets = Vec::with_capacity(lists.len() + 1);
    offsets.push(0);
    let mut entries = Vec::with_capacity(lists.iter().map(Vec::len).sum());
    for list in lists {
        entries.extend(list);
        offsets.push(entries.len());
    }
    (offsets, entries)
}

fn build(n: usize, pairs: impl IntoIterator<Item = (usize, usize, f64)>, directed: bool) -> Graph {
    let mut out_adj = vec![Vec::new(); n];
    let mut in_adj = vec![Vec::new(); n];
    for (a, b, w) in pairs {
        assert!(a < n && b < n, "edge ({a}, {b}) out of range for {n} nodes");
        if a == b {
            continue;
        }
        out_adj[a].push((b, w));
        in_adj[b].push((a, w));
        if !directed {
            out_adj[b].push((a, w));
            in_adj[a].push((b, w));
        }
    }
    for list in out_adj.iter_mut().chain(in_adj.iter_mut()) {
        list.sort_by_key(|&(v, _)| v);
        list.dedup_by_key(|&mut (v, _)| v);
    }
    let (out_offsets, out_entries) = flatten(out_adj);
    let (in_offsets, in_entries) = flatten(in_adj);
    Graph {
        out_offsets,
        out_entries,
        in_offsets,
        in_entries,
        directed,
    }
}

impl Graph {
    pub fn undirected(n: usize, edges: impl IntoIterator<Item = (usize, usize, f64)>) -> Self {
        build(n, edges, false)
    }

    pub fn directed(n: usize, arcs: impl IntoIterator<Item = (usize, usize, f64)>) -> Self {
        build(n, arcs, true)
    }

    /// Unit-weight undirected graph.
    pub fn unweighted(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        build(n, edges.into_iter().map(|(a, b)| (a, b, 1.0)), false)
    }

    pub fn from_similarity(sim: &SimilarityGraph) -> Self {
        Self::undirected(sim.n(), sim.edges.iter().map(|e| (e.source, e.target, e.weight)))
    }

    pub fn n(&self) -> usize {
        self.out_offsets.len() - 1
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    /// Number of edges (arcs for a directed graph).
    pub fn edge_count(&self) -> usize {
        if self.directed {
            self.out_entries.len()
        } else {
            self.out_entries.len() / 2
        }
    }

    /// Successors of `v` with edge weights.
    pub fn neighbors(&self, v: usize) -> &[(usize, f64)] {
        &self.out_entries[self.out_offsets[v]..self.out_offsets[v + 1]]
    }

    pub fn predecessors(&self, v: usize) -> &[(usize, f64)] {
        &self.in_entries[self.in_offsets[v]..self.in_offsets[v + 1]]
    }

    /// Start of `v`'s slice in the flattened predecessor lists; a buffer of
    /// [`Graph::in_entry_count`] slots holds any subset of every node's
    /// predecessors at these offsets.
    pub(super) fn in_offset(&self, v: usize) -> usize {
        self.in_offsets[v]
    }

    pub(super) fn in_entry_count(&self) -> usize {
        self.in_entries.len()
    }

    pub fn max_weight(&self) -> f64 {
        self.out_entries.iter().map(|&(_, w)| w).fold(0.0, f64::max)
    }

    /// Connected components of the underlying undirected graph, each sorted,
    /// listed in order of their smallest node.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut components = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut component = Vec::new();
            while let Some(v) = stack.pop() {
                component.push(v);
                for &(u, _) in self.neighbors(v).iter().chain(self.predecessors(v)) {
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
            component.sort_unstable();
            components.push(component);
        }
        components
    }
}
