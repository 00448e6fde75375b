// SPDX-License-Identifier: Apache-2.0

//! Seed-anchored local citation environments.
//!
//! In cited mode a journal joins the environment of a seed when its citations
//! to the seed are strictly more than `share_threshold` of everything the seed
//! receives. Citing mode is the mirror image over the seed's references. The
//! share denominator is always the seed's total over the full matrix.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::{CitationMatrix, CorpusError};
use crate::Execution;

pub const DEFAULT_SHARE_THRESHOLD: f64 = 0.01;

#[derive(Debug, Error)]
pub enum EnvironmentError {
    #[error("seed {abbrev} has no {mode} citations; its environment is empty")]
    EmptyEnvironment { seed: usize, abbrev: String, mode: Mode },
    #[error("share threshold {0} is outside [0, 1]")]
    InvalidShare(f64),
    #[error("at least one seed journal is required")]
    NoSeeds,
    #[error("expected exactly one seed, got {0}")]
    NotSingleSeed(usize),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
}

/// Direction of the citation relation an environment is built on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Journals citing the seed; profiles are columns.
    #[default]
    Cited,
    /// Journals cited by the seed; profiles are rows.
    Citing,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Cited => "cited",
            Mode::Citing => "citing",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "cited" => Ok(Mode::Cited),
            "citing" => Ok(Mode::Citing),
            other => Err(format!("unknown mode {other:?}, expected cited or citing")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnvironmentSpec {
    pub seeds: BTreeSet<usize>,
    pub mode: Mode,
    pub share_threshold: f64,
}

impl EnvironmentSpec {
    pub fn new(seeds: impl IntoIterator<Item = usize>, mode: Mode) -> Self {
        Self {
            seeds: seeds.into_iter().collect(),
            mode,
            share_threshold: DEFAULT_SHARE_THRESHOLD,
        }
    }

    pub fn with_share(mut self, share_threshold: f64) -> Self {
        self.share_threshold = share_threshold;
        self
    }

    fn validate(&self, matrix: &CitationMatrix) -> Result<(), EnvironmentError> {
        if !(0.0..=1.0).contains(&self.share_threshold) {
            return Err(EnvironmentError::InvalidShare(self.share_threshold));
        }
        if self.seeds.is_empty() {
            return Err(EnvironmentError::NoSeeds);
        }
        for &seed in &self.seeds {
            if seed >= matrix.n() {
                return Err(CorpusError::Index {
                    id: seed,
                    n: matrix.n(),
                }
                .into());
            }
        }
        Ok(())
    }
}

/// A seed-anchored journal subset with its citation submatrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocalEnvironment {
    /// Global journal ids in ascending order; seeds are always included.
    pub members: Vec<usize>,
    /// Citations among `members`, indexed by position in `members`.
    pub submatrix: CitationMatrix,
    pub mode: Mode,
    pub share_threshold: f64,
    pub seeds: BTreeSet<usize>,
    /// Seeds that admitted each member. A seed admits itself.
    pub provenance: BTreeMap<usize, BTreeSet<usize>>,
    /// Seeds with no citations in `mode`, kept as isolated members.
    pub isolated_seeds: BTreeSet<usize>,
    #[serde(default)]
    pub warnings: Vec<String>,
}

impl LocalEnvironment {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Position of a global journal id within `members`.
    pub fn position(&self, journal: usize) -> Option<usize> {
        self.members.binary_search(&journal).ok()
    }

    pub fn abbrev(&self, position: usize) -> &str {
        self.submatrix.registry().abbrev(position)
    }
}

/// Members admitted by one seed, seed included. `None` when the seed has no
/// citations in the chosen direction.
fn admitted(matrix: &CitationMatrix, seed: usize, mode: Mode, share: f64) -> Option<BTreeSet<usize>> {
    let links: Vec<(usize, u64)> = match mode {
        Mode::Cited => matrix.column(seed),
        Mode::Citing => matrix.row(seed).collect(),
    };
    let total: u64 = links.iter().map(|&(_, c)| c).sum();
    if total == 0 {
        return None;
    }
    let cutoff = share * total as f64;
    let mut members: BTreeSet<usize> = links
        .into_iter()
        .filter(|&(k, c)| k != seed && c as f64 > cutoff)
        .map(|(k, _)| k)
        .collect();
    members.insert(seed);
    Some(members)
}

fn assemble(
    matrix: &CitationMatrix,
    spec: &EnvironmentSpec,
    per_seed: Vec<(usize, Option<BTreeSet<usize>>)>,
) -> Result<LocalEnvironment, EnvironmentError> {
    let mut provenance: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    let mut isolated_seeds = BTreeSet::new();
    let mut warnings = Vec::new();
    for (seed, members) in per_seed {
        match members {
            Some(members) => {
                for m in members {
                    provenance.entry(m).or_default().insert(seed);
                }
            }
            None => {
                let message = format!(
                    "seed {} has no {} citations and is kept as an isolate",
                    matrix.registry().abbrev(seed),
                    spec.mode
                );
                log::warn!("{message}");
                warnings.push(message);
                isolated_seeds.insert(seed);
                provenance.entry(seed).or_default().insert(seed);
            }
        }
    }
    let members: Vec<usize> = provenance.keys().copied().collect();
    let submatrix = matrix.restrict(&members)?;
    Ok(LocalEnvironment {
        members,
        submatrix,
        mode: spec.mode,
        share_threshold: spec.share_threshold,
        seeds: spec.seeds.clone(),
        provenance,
        isolated_seeds,
        warnings,
    })
}

/// The local environment of a single seed.
///
/// A seed with no citations in the chosen mode is an error here; use
/// [`extract_union`] to keep such seeds as isolates.
pub fn extract(matrix: &CitationMatrix, spec: &EnvironmentSpec) -> Result<LocalEnvironment, EnvironmentError> {
    spec.validate(matrix)?;
    if spec.seeds.len() != 1 {
        return Err(EnvironmentError::NotSingleSeed(spec.seeds.len()));
    }
    let seed = *spec.seeds.iter().next().expect("one seed");
    let members =
        admitted(matrix, seed, spec.mode, spec.share_threshold).ok_or_else(|| EnvironmentError::EmptyEnvironment {
            seed,
            abbrev: matrix.registry().abbrev(seed).to_string(),
            mode: spec.mode,
        })?;
    assemble(matrix, spec, vec![(seed, Some(members))])
}

/// The union of the environments of every seed in `spec`.
///
/// Per-seed extraction runs under `exec`; the union is ordered by journal id
/// either way. Seeds without citations in the chosen mode are retained as
/// isolated members and reported in `warnings`.
pub fn extract_union(
    matrix: &CitationMatrix,
    spec: &EnvironmentSpec,
    exec: Execution,
) -> Result<LocalEnvironment, EnvironmentError> {
    spec.validate(matrix)?;
    let seeds: Vec<usize> = spec.seeds.iter().copied().collect();
    let per_seed = exec.map_range(seeds.len(), |k| {
        (
            seeds[k],
            admitted(matrix, seeds[k], spec.mode, spec.share_threshold),
        )
    });
    assemble(matrix, spec, per_seed)
}
