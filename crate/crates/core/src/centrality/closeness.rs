// SPDX-License-Identifier: Apache-2.0

use super::paths::ShortestPaths;
use super::{CentralityError, Graph, PathMetric};
use crate::Execution;

fn closeness_from(paths: &ShortestPaths, n: usize) -> f64 {
    if n < 2 {
        return 0.0;
    }
    let reached = paths.order.len() - 1;
    if reached == 0 {
        return 0.0;
    }
    let total: f64 = paths.order.iter().map(|&v| paths.dist[v]).sum();
    let r = reached as f64;
    (r / (n - 1) as f64) * (r / total)
}

/// Closeness of node `j`: with `r` nodes reachable at total distance `d`,
/// `(r / (n - 1)) * (r / d)`. This is `(n - 1) / d` on a connected graph and
/// 0 for an isolate.
pub fn closeness_centrality(g: &Graph, j: usize, metric: PathMetric) -> Result<f64, CentralityError> {
    if j >= g.n() {
        return Err(CentralityError::UnknownNode { node: j, n: g.n() });
    }
    let mut paths = ShortestPaths::new(g.n());
    paths.run(g, j, metric, false);
    Ok(closeness_from(&paths, g.n()))
}

pub fn closeness_all(g: &Graph, metric: PathMetric, exec: Execution) -> Vec<f64> {
    let n = g.n();
    exec.map_range(n, |j| {
        let mut paths = ShortestPaths::new(n);
        paths.run(g, j, metric, false);
        closeness_from(&paths, n)
    })
}
