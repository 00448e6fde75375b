// SPDX-License-Identifier: Apache-2.0

//! Size-normalized similarity of citation profiles.
//!
//! Every member of an environment gets a profile vector over the environment
//! (its column in cited mode, its row in citing mode). Profiles are compared
//! pairwise with the cosine or with Pearson's r, and pairs at or above the
//! threshold become edges of an undirected [`SimilarityGraph`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::environment::{LocalEnvironment, Mode};
use crate::Execution;

pub const DEFAULT_COSINE_THRESHOLD: f64 = 0.2;

#[derive(Debug, Error, PartialEq)]
pub enum SimilarityError {
    #[error("vectors differ in length ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("similarity undefined for a zero vector")]
    ZeroVector,
    #[error("correlation undefined for a vector with zero variance")]
    ZeroVariance,
    #[error("correlation needs at least two components")]
    TooShort,
    #[error("threshold {threshold} outside the range of {measure}")]
    InvalidThreshold { threshold: f64, measure: Measure },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Measure {
    #[default]
    Cosine,
    Pearson,
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Measure::Cosine => "cosine",
            Measure::Pearson => "pearson",
        })
    }
}

impl FromStr for Measure {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "cosine" => Ok(Measure::Cosine),
            "pearson" => Ok(Measure::Pearson),
            other => Err(format!("unknown measure {other:?}, expected cosine or pearson")),
        }
    }
}

/// Left-to-right dot product.
fn dot(x: &[f64], y: &[f64]) -> f64 {
    let mut acc = 0.0;
    for (a, b) in x.iter().zip(y) {
        acc += a * b;
    }
    acc
}

/// Cosine from a dot product and two squared norms, clamped against rounding.
fn cosine_from_parts(dot: f64, xx: f64, yy: f64) -> f64 {
    (dot / (xx * yy).sqrt()).clamp(-1.0, 1.0)
}

/// The cosine of the angle between `x` and `y`.
///
/// For non-negative inputs the result lies in `[0, 1]`.
pub fn cosine(x: &[f64], y: &[f64]) -> Result<f64, SimilarityError> {
    if x.len() != y.len() {
        return Err(SimilarityError::LengthMismatch(x.len(), y.len()));
    }
    let (xx, yy) = (dot(x, x), dot(y, y));
    if xx == 0.0 || yy == 0.0 {
        return Err(SimilarityError::ZeroVector);
    }
    Ok(cosine_from_parts(dot(x, y), xx, yy))
}

fn centered(x: &[f64]) -> Vec<f64> {
    let mean = x.iter().sum::<f64>() / x.len() as f64;
    x.iter().map(|v| v - mean).collect()
}

/// Pearson's product-moment correlation of `x` and `y`.
pub fn pearson(x: &[f64], y: &[f64]) -> Result<f64, SimilarityError> {
    if x.len() != y.len() {
        return Err(SimilarityError::LengthMismatch(x.len(), y.len()));
    }
    if x.len() < 2 {
        return Err(SimilarityError::TooShort);
    }
    let (cx, cy) = (centered(x), centered(y));
    let (xx, yy) = (dot(&cx, &cx), dot(&cy, &cy));
    if xx == 0.0 || yy == 0.0 {
        return Err(SimilarityError::ZeroVariance);
    }
    Ok(cosine_from_parts(dot(&cx, &cy), xx, yy))
}

/// One citation profile per environment member.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileSet {
    /// Global journal ids, in profile order.
    pub members: Vec<usize>,
    pub labels: Vec<String>,
    pub vectors: Vec<Vec<f64>>,
}

impl ProfileSet {
    /// Profiles of an environment in its own mode.
    ///
    /// A member's own component (its self-citations) is zeroed unless
    /// `keep_diagonal` is set.
    pub fn from_environment(env: &LocalEnvironment, keep_diagonal: bool) -> Self {
        let n = env.len();
        let sub = &env.submatrix;
        let mut vectors = vec![vec![0.0; n]; n];
        for (i, j, c) in sub.entries() {
            if i == j && !keep_diagonal {
                continue;
            }
            match env.mode {
                Mode::Cited => vectors[j][i] = c as f64,
                Mode::Citing => vectors[i][j] = c as f64,
            }
        }
        Self {
            members: env.members.clone(),
            labels: (0..n).map(|k| env.abbrev(k).to_string()).collect(),
            vectors,
        }
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimilarityEdge {
    /// Position of the first endpoint; always less than `target`.
    pub source: usize,
    pub target: usize,
    pub weight: f64,
}

/// Undirected similarity graph over environment members.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimilarityGraph {
    pub members: Vec<usize>,
    pub labels: Vec<String>,
    /// Retained edges ordered by `(source, target)`.
    pub edges: Vec<SimilarityEdge>,
    pub measure: Measure,
    pub threshold_applied: f64,
    /// Positions of members without any retained edge.
    pub isolates: Vec<usize>,
    #[serde(default)]
    pub warnings: Vec<String>,
}

impl SimilarityGraph {
    pub fn n(&self) -> usize {
        self.members.len()
    }

    pub fn weight(&self, a: usize, b: usize) -> Option<f64> {
        let (s, t) = if a < b { (a, b) } else { (b, a) };
        self.edges
            .binary_search_by(|e| (e.source, e.target).cmp(&(s, t)))
            .ok()
            .map(|k| self.edges[k].weight)
    }

    pub fn edge_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().map(|e| (e.source, e.target))
    }
}

/// Pairwise similarities of `profiles` with edges kept where the value is at
/// least `threshold`.
///
/// Members whose similarity is undefined (zero vector for the cosine, zero
/// variance for Pearson) get no edges and a warning. Pairs are evaluated
/// independently under `exec`; the result does not depend on it.
pub fn build_graph(
    profiles: &ProfileSet,
    threshold: f64,
    measure: Measure,
    exec: Execution,
) -> Result<SimilarityGraph, SimilarityError> {
    let valid = match measure {
        Measure::Cosine => (0.0..=1.0).contains(&threshold),
        Measure::Pearson => (-1.0..=1.0).contains(&threshold),
    };
    if !valid {
        return Err(SimilarityError::InvalidThreshold { threshold, measure });
    }
    let n = profiles.len();
    let vectors: Vec<Vec<f64>> = match measure {
        Measure::Cosine => profiles.vectors.clone(),
        Measure::Pearson if n >= 2 => profiles.vectors.iter().map(|v| centered(v)).collect(),
        Measure::Pearson => vec![Vec::new(); n],
    };
    let norms: Vec<f64> = vectors.iter().map(|v| dot(v, v)).collect();

    let mut warnings = Vec::new();
    for (k, &norm) in norms.iter().enumerate() {
        if norm == 0.0 {
            let reason = match measure {
                Measure::Cosine => "has an all-zero profile",
                Measure::Pearson => "has a zero-variance profile",
            };
            let message = format!("{} {reason}; similarity treated as 0", profiles.labels[k]);
            log::warn!("{message}");
            warnings.push(message);
        }
    }

    let rows = exec.map_range(n, |i| {
        let mut kept = Vec::new();
        if norms[i] == 0.0 {
            return kept;
        }
        for j in (i + 1)..n {
            if norms[j] == 0.0 {
                continue;
            }
            let value = cosine_from_parts(dot(&vectors[i], &vectors[j]), norms[i], norms[j]);
            if value >= threshold {
                kept.push(SimilarityEdge {
                    source: i,
                    target: j,
                    weight: value,
                });
            }
        }
        kept
    });
    let edges: Vec<SimilarityEdge> = rows.into_iter().flatten().collect();

    let mut degree = vec![0usize; n];
    for e in &edges {
        degree[e.source] += 1;
        degree[e.target] += 1;
    }
    let isolates = (0..n).filter(|&k| degree[k] == 0).collect();

    Ok(SimilarityGraph {
        members: profiles.members.clone(),
        labels: profiles.labels.clone(),
        edges,
        measure,
        threshold_applied: threshold,
        isolates,
        warnings,
    })
}
