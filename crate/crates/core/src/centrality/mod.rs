// SPDX-License-Identifier: Apache-2.0

//! Degree, closeness, betweenness and eigenvector centrality.
//!
//! Closeness and betweenness count geodesics on the unweighted skeleton of a
//! graph by default; [`PathMetric::InverseWeight`] switches to shortest paths
//! with `1 / weight` edge lengths. Edge weights always feed the eigenvector.

mod betweenness;
mod closeness;
mod degree;
mod eigenvector;
mod graph;
mod paths;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use betweenness::{betweenness_centrality, betweenness_raw};
pub use closeness::{closeness_all, closeness_centrality};
pub use degree::{degree_all, degree_centrality, Degree};
pub use eigenvector::{eigenvector_centrality, Eigenvector, DEFAULT_MAX_ITER, DEFAULT_TOL};
pub use graph::Graph;

use crate::similarity::SimilarityGraph;
use crate::Execution;

#[derive(Debug, Error, PartialEq)]
pub enum CentralityError {
    #[error("node {node} out of range for a graph of {n} nodes")]
    UnknownNode { node: usize, n: usize },
    #[error("power iteration did not converge in {iterations} iterations (residual {residual:e})")]
    Convergence { iterations: usize, residual: f64 },
    #[error("eigenvector centrality needs an undirected graph")]
    NotSymmetric,
    #[error("eigenvector centrality needs non-negative edge weights")]
    NegativeWeight,
    #[error("tolerance must be positive")]
    InvalidTolerance,
}

/// Edge length used for geodesics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PathMetric {
    /// Every edge has length 1.
    #[default]
    Unweighted,
    /// An edge of weight `w` has length `1 / w`.
    InverseWeight,
}

/// Which measures a report computes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasureSet {
    pub degree: bool,
    pub closeness: bool,
    pub betweenness: bool,
    pub eigenvector: bool,
}

impl Default for MeasureSet {
    fn default() -> Self {
        Self {
            degree: true,
            closeness: true,
            betweenness: true,
            eigenvector: true,
        }
    }
}

impl std::str::FromStr for MeasureSet {
    type Err = String;

    /// Parses a comma-separated list such as `degree,betweenness`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut set = MeasureSet {
            degree: false,
            closeness: false,
            betweenness: false,
            eigenvector: false,
        };
        for name in s.split(',').map(str::trim).filter(|n| !n.is_empty()) {
            match name.to_ascii_lowercase().as_str() {
                "degree" => set.degree = true,
                "closeness" => set.closeness = true,
                "betweenness" => set.betweenness = true,
                "eigenvector" => set.eigenvector = true,
                "all" => set = MeasureSet::default(),
                other => return Err(format!("unknown centrality measure {other:?}")),
            }
        }
        Ok(set)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CentralityOptions {
    pub measures: MeasureSet,
    pub paths: PathMetric,
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for CentralityOptions {
    fn default() -> Self {
        Self {
            measures: MeasureSet::default(),
            paths: PathMetric::Unweighted,
            tol: DEFAULT_TOL,
            max_iter: DEFAULT_MAX_ITER,
        }
    }
}

/// Centrality of one member. Fractions lie in `[0, 1]`; measures that were
/// not requested are `None`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MemberCentrality {
    pub journal: String,
    pub journal_id: usize,
    pub in_degree: Option<usize>,
    pub out_degree: Option<usize>,
    pub degree: Option<f64>,
    pub closeness: Option<f64>,
    pub betweenness: Option<f64>,
    pub eigenvector: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CentralityReport {
    pub members: Vec<MemberCentrality>,
    pub paths: PathMetric,
    pub eigenvalue: Option<f64>,
    #[serde(default)]
    pub warnings: Vec<String>,
}

impl CentralityReport {
    pub fn get(&self, journal: &str) -> Option<&MemberCentrality> {
        let key = crate::corpus::journal_key(journal);
        self.members
            .iter()
            .find(|m| crate::corpus::journal_key(&m.journal) == key)
    }
}

/// Computes the requested measures for every member of a similarity graph.
pub fn centrality_report(
    sim: &SimilarityGraph,
    options: &CentralityOptions,
    exec: Execution,
) -> Result<CentralityReport, CentralityError> {
    let graph = Graph::from_similarity(sim);
    let n = graph.n();
    let m = options.measures;
    let degrees = m.degree.then(|| degree_all(&graph));
    let closeness = m.closeness.then(|| closeness_all(&graph, options.paths, exec));
    let betweenness = m
        .betweenness
        .then(|| betweenness_centrality(&graph, options.paths, exec));
    let eigen = if m.eigenvector {
        Some(eigenvector_centrality(&graph, options.tol, options.max_iter)?)
    } else {
        None
    };
    let members = (0..n)
        .map(|k| MemberCentrality {
            journal: sim.labels[k].clone(),
            journal_id: sim.members[k],
            in_degree: degrees.as_ref().map(|d| d[k].in_degree),
            out_degree: degrees.as_ref().map(|d| d[k].out_degree),
            degree: degrees.as_ref().map(|d| d[k].normalized),
            closeness: closeness.as_ref().map(|c| c[k]),
            betweenness: betweenness.as_ref().map(|b| b[k]),
            eigenvector: eigen.as_ref().map(|e| e.loadings[k]),
        })
        .collect();
    Ok(CentralityReport {
        members,
        paths: options.paths,
        eigenvalue: eigen.as_ref().map(|e| e.eigenvalue),
        warnings: eigen.map(|e| e.warnings).unwrap_or_default(),
    })
}
