// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use super::{CentralityError, Graph};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: usize = 1000;

/// Principal eigenvector loadings of the weighted adjacency matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Eigenvector {
    /// Max-normalized loadings, zero outside `component`.
    pub loadings: Vec<f64>,
    /// Rayleigh quotient of the returned vector.
    pub eigenvalue: f64,
    /// `max |A v - eigenvalue v| / max |v|`.
    pub residual: f64,
    pub iterations: usize,
    /// Nodes the eigenvector was computed on.
    pub component: Vec<usize>,
    #[serde(default)]
    pub warnings: Vec<String>,
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Power iteration from the uniform vector.
///
/// The iteration runs on `A + cI` with `c` the largest edge weight, which has
/// the same eigenvectors as `A` but a strictly dominant Perron root even on
/// bipartite graphs. It stops once successive max-normalized iterates differ
/// by less than `tol` and the eigen-residual of the current iterate is below
/// `tol` (relative to `c` when the weights exceed 1).
///
/// A disconnected graph is reduced to its largest component (ties go to the
/// component holding the smallest node); all other nodes load 0.
pub fn eigenvector_centrality(g: &Graph, tol: f64, max_iter: usize) -> Result<Eigenvector, CentralityError> {
    if !(tol > 0.0) {
        return Err(CentralityError::InvalidTolerance);
    }
    if g.is_directed() {
        return Err(CentralityError::NotSymmetric);
    }
    let n = g.n();
    if (0..n).any(|v| g.neighbors(v).iter().any(|&(_, w)| w < 0.0)) {
        return Err(CentralityError::NegativeWeight);
    }
    let mut loadings = vec![0.0; n];
    let mut warnings = Vec::new();
    let components = g.components();
    let Some(component) = components
        .iter()
        .fold(None::<&Vec<usize>>, |best, c| match best {
            Some(b) if b.len() >= c.len() => Some(b),
            _ => Some(c),
        })
        .cloned()
    else {
        return Ok(Eigenvector {
            loadings,
            eigenvalue: 0.0,
            residual: 0.0,
            iterations: 0,
            component: Vec::new(),
            warnings,
        });
    };
    if components.len() > 1 {
        let message = format!(
            "graph has {} components; eigenvector computed on the largest ({} of {} nodes)",
            components.len(),
            component.len(),
            n
        );
        log::warn!("{message}");
        warnings.push(message);
    }

    let size = component.len();
    let mut local = vec![usize::MAX; n];
    for (k, &v) in component.iter().enumerate() {
        local[v] = k;
    }
    let adjacency: Vec<Vec<(usize, f64)>> = component
        .iter()
        .map(|&v| g.neighbors(v).iter().map(|&(u, w)| (local[u], w)).collect())
        .collect();
    let shift = g.max_weight();
    let residual_tol = tol * shift.max(1.0);

    let mut x = vec![1.0; size];
    let mut y = vec![0.0; size];
    let mut next = vec![0.0; size];
    let mut residual = f64::INFINITY;
    for iteration in 1..=max_iter {
        for (k, row) in adjacency.iter().enumerate() {
            let mut acc = 0.0;
            for &(u, w) in row {
                acc += w * x[u];
            }
            y[k] = acc;
        }
        let xy: f64 = x.iter().zip(&y).map(|(a, b)| a * b).sum();
        let xx: f64 = x.iter().map(|a| a * a).sum();
        let eigenvalue = xy / xx;
        residual = x
            .iter()
            .zip(&y)
            .fold(0.0f64, |m, (a, b)| m.max((b - eigenvalue * a).abs()))
            / max_abs(&x);

        for k in 0..size {
            next[k] = y[k] + shift * x[k];
        }
        // an edgeless component (a single node) makes every iterate vanish;
        // x is then an exact eigenvector for eigenvalue 0
        let scale = max_abs(&next);
        let mut diff = 0.0f64;
        if scale > 0.0 {
            for k in 0..size {
                next[k] /= scale;
                diff = diff.max((next[k] - x[k]).abs());
            }
        }
        if scale == 0.0 || (diff < tol && residual < residual_tol) {
            for (k, &v) in component.iter().enumerate() {
                loadings[v] = x[k];
            }
            return Ok(Eigenvector {
                loadings,
                eigenvalue,
                residual,
                iterations: iteration,
                component,
                warnings,
            });
        }
        std::mem::swap(&mut x, &mut next);
    }
    Err(CentralityError::Convergence {
        iterations: max_iter,
        residual,
    })
}
