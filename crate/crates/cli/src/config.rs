// SPDX-License-Identifier: Apache-2.0

//! Effective run configuration and the metadata block stamped on outputs.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use citefield::environment::{Mode, DEFAULT_SHARE_THRESHOLD};
use citefield::indicators::DEFAULT_WINDOW;
use citefield::similarity::{Measure, DEFAULT_COSINE_THRESHOLD};

use crate::error::{CliError, Result};

pub const DEFAULT_LAYOUT_SEED: u64 = 1;

/// Every knob a command reads. Loaded from `--config`, then overridden by
/// command-line flags.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Corpus JSON written by `ingest`.
    pub corpus: Option<PathBuf>,
    /// `citing,cited,count` edge lists, merged in order.
    pub edges: Vec<PathBuf>,
    /// Source-index tag per edge list.
    pub sources: Vec<String>,
    pub journals: Option<PathBuf>,
    pub citable: Option<PathBuf>,
    /// Environment JSON written by `env`.
    pub environment: Option<PathBuf>,
    pub year: Option<i32>,
    pub seeds: Vec<String>,
    pub mode: Mode,
    pub share_threshold: f64,
    pub cosine_threshold: f64,
    pub measure: Measure,
    pub window: u32,
    pub keep_diagonal: bool,
    pub weighted_paths: bool,
    pub measures: String,
    pub percent: bool,
    pub annotate_betweenness: bool,
    pub format: Option<String>,
    pub layout_seed: u64,
    pub out: Option<PathBuf>,
    pub out_dir: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            corpus: None,
            edges: Vec::new(),
            sources: Vec::new(),
            journals: None,
            citable: None,
            environment: None,
            year: None,
            seeds: Vec::new(),
            mode: Mode::Cited,
            share_threshold: DEFAULT_SHARE_THRESHOLD,
            cosine_threshold: DEFAULT_COSINE_THRESHOLD,
            measure: Measure::Cosine,
            window: DEFAULT_WINDOW,
            keep_diagonal: false,
            weighted_paths: false,
            measures: "all".into(),
            percent: false,
            annotate_betweenness: false,
            format: None,
            layout_seed: DEFAULT_LAYOUT_SEED,
            out: None,
            out_dir: None,
        }
    }
}

const OUTPUT_FIELDS: [&str; 2] = ["out", "out_dir"];

fn file_digest(path: &Path) -> Result<String> {
    let bytes = std::fs::read(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(format!("sha256:{}", hex::encode(Sha256::digest(bytes))))
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        serde_json::from_str(&text).map_err(|err| CliError::Usage(format!("{}: {err}", path.display())))
    }

    /// The configuration with input paths replaced by content digests and
    /// output locations dropped: two runs with equal fingerprints produce
    /// equal outputs.
    pub fn fingerprint(&self) -> Result<Value> {
        let mut value = serde_json::to_value(self).expect("config serializes");
        let map = value.as_object_mut().expect("config is an object");
        for field in OUTPUT_FIELDS {
            map.remove(field);
        }
        if let Some(p) = &self.corpus {
            map.insert("corpus".into(), file_digest(p)?.into());
        }
        if let Some(p) = &self.journals {
            map.insert("journals".into(), file_digest(p)?.into());
        }
        if let Some(p) = &self.citable {
            map.insert("citable".into(), file_digest(p)?.into());
        }
        if let Some(p) = &self.environment {
            map.insert("environment".into(), file_digest(p)?.into());
        }
        let edges = self
            .edges
            .iter()
            .map(|p| file_digest(p).map(Value::from))
            .collect::<Result<Vec<_>>>()?;
        map.insert("edges".into(), Value::Array(edges));
        Ok(value)
    }
}

/// Provenance block carried by every output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub tool: String,
    pub version: String,
    pub command: String,
    /// SHA-256 of the canonical JSON of [`RunConfig::fingerprint`].
    pub config_hash: String,
    pub layout_seed: u64,
    pub layout: String,
}

impl Metadata {
    pub fn new(command: &str, config: &RunConfig) -> Result<Self> {
        let fingerprint = config.fingerprint()?;
        let canonical = serde_json::to_vec(&fingerprint).expect("json value serializes");
        Ok(Self {
            tool: "citefield".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            config_hash: hex::encode(Sha256::digest(canonical)),
            layout_seed: config.layout_seed,
            layout: format!(
                "{}/v{}",
                citefield::render::LAYOUT_ALGORITHM,
                citefield::render::LAYOUT_VERSION
            ),
        })
    }

    /// One-line form for text outputs.
    pub fn line(&self) -> String {
        format!(
            "{} {} command={} config_hash={} layout={} layout_seed={}",
            self.tool, self.version, self.command, self.config_hash, self.layout, self.layout_seed
        )
    }
}
