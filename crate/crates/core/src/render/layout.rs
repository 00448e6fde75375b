// SPDX-License-Identifier: Apache-2.0

//! Seeded spring-embedder placement in the unit square.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::similarity::SimilarityGraph;
use crate::Execution;

pub const LAYOUT_ALGORITHM: &str = "fruchterman-reingold";
/// Bumped whenever the placement of a given (graph, seed) pair changes.
pub const LAYOUT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LayoutConfig {
    pub iterations: usize,
    /// Largest displacement in the first iteration; cools linearly to 0.
    pub initial_temperature: f64,
    /// Free border around connected nodes. Isolates sit in the bottom border.
    pub margin: f64,
}

impl Default for LayoutConfig {
    fn default() -> Self {
        Self {
            iterations: 500,
            initial_temperature: 0.1,
            margin: 0.08,
        }
    }
}

/// Positions in `[0, 1]^2`, one per graph member.
///
/// Members with edges are placed by Fruchterman-Reingold forces (all-pairs
/// repulsion `k^2 / d`, per-edge attraction `w d^2 / k`) from a ChaCha8
/// start seeded by `seed`, then centered and scaled into the margins.
/// Isolates are lined up along the bottom margin in member order. Forces on
/// each node are summed in a fixed order, so the output is bit-reproducible
/// under either [`Execution`] mode.
pub fn layout(g: &SimilarityGraph, seed: u64, config: &LayoutConfig, exec: Execution) -> Vec<(f64, f64)> {
    let n = g.n();
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![(0.5, 0.5)];
    }
    let mut coords = vec![(0.5, 0.5); n];

    let mut degree = vec![0usize; n];
    for e in &g.edges {
        degree[e.source] += 1;
        degree[e.target] += 1;
    }
    let connected: Vec<usize> = (0..n).filter(|&v| degree[v] > 0).collect();
    let isolates: Vec<usize> = (0..n).filter(|&v| degree[v] == 0).collect();

    for (k, &v) in isolates.iter().enumerate() {
        let x = (k + 1) as f64 / (isolates.len() + 1) as f64;
        coords[v] = (x, 1.0 - config.margin / 2.0);
    }
    if connected.is_empty() {
        return coords;
    }

    let m = connected.len();
    let mut local = vec![usize::MAX; n];
    for (k, &v) in connected.iter().enumerate() {
        local[v] = k;
    }
    let mut springs: Vec<Vec<(usize, f64)>> = vec![Vec::new(); m];
    for e in &g.edges {
        let (a, b) = (local[e.source], local[e.target]);
        springs[a].push((b, e.weight.max(0.0)));
        springs[b].push((a, e.weight.max(0.0)));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pos: Vec<(f64, f64)> = (0..m).map(|_| (rng.gen::<f64>(), rng.gen::<f64>())).collect();
    let k = (1.0 / m as f64).sqrt();
    let k2 = k * k;

    for iteration in 0..config.iterations {
        let temperature = config.initial_temperature * (1.0 - iteration as f64 / config.iterations as f64);
        let current = &pos;
        let displacement = exec.map_range(m, |v| {
            let (px, py) = current[v];
            let (mut dx, mut dy) = (0.0, 0.0);
            for (u, &(qx, qy)) in current.iter().enumerate() {
                if u == v {
                    continue;
                }
                let (mut ex, mut ey) = (px - qx, py - qy);
                let mut d = (ex * ex + ey * ey).sqrt();
                if d < 1e-9 {
                    // coincident nodes are pushed apart along x by id order
                    ex = if v < u { -1e-9 } else { 1e-9 };
                    ey = 0.0;
                    d = 1e-9;
                }
                let f = k2 / d;
                dx += ex / d * f;
                dy += ey / d * f;
            }
            for &(u, w) in &springs[v] {
                let (qx, qy) = current[u];
                let (ex, ey) = (px - qx, py - qy);
                let d = (ex * ex + ey * ey).sqrt();
                let f = w * d / k;
                dx -= ex * f;
                dy -= ey * f;
            }
            (dx, dy)
        });
        for (p, (dx, dy)) in pos.iter_mut().zip(displacement) {
            let length = (dx * dx + dy * dy).sqrt();
            if length > 0.0 {
                let step = length.min(temperature) / length;
                p.0 += dx * step;
                p.1 += dy * step;
            }
        }
    }

    let (mut min_x, mut max_x, mut min_y, mut max_y) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in &pos {
        min_x = min_x.min(x);
        max_x = max_x.max(x);
        min_y = min_y.min(y);
        max_y = max_y.max(y);
    }
    let span = (max_x - min_x).max(max_y - min_y);
    let scale = if span > 0.0 { (1.0 - 2.0 * config.margin) / span } else { 0.0 };
    let (cx, cy) = ((min_x + max_x) / 2.0, (min_y + max_y) / 2.0);
    for (k, &v) in connected.iter().enumerate() {
        let (x, y) = pos[k];
        coords[v] = (0.5 + (x - cx) * scale, 0.5 + (y - cy) * scale);
    }
    coords
}
