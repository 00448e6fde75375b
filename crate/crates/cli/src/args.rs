// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use citefield::environment::Mode;
use citefield::similarity::Measure;

use crate::config::RunConfig;

#[derive(Debug, Parser)]
#[command(name = "citefield", version, about = "Journal citation environments, indicators, centrality and maps")]
pub struct Cli {
    /// JSON run configuration; flags given on the command line take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Merge edge lists, journal lists and citable-item records into a corpus file.
    Ingest {
        #[command(flatten)]
        input: InputArgs,
        /// Output file (default: stdout).
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Impact factor, quasi impact factor, h-index and citation totals.
    Indicators {
        #[command(flatten)]
        input: InputArgs,
        /// Journals to report (default: all).
        #[arg(long = "journal", id = "journal", value_delimiter = ',', value_name = "ABBREV")]
        journals: Vec<String>,
        /// Citation window in years (default: 2).
        #[arg(long)]
        window: Option<u32>,
        /// json or text.
        #[arg(long)]
        format: Option<String>,
        /// Output file (default: stdout).
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Extract the citation environment of one or more seed journals.
    Env {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        seeds: SeedArgs,
        /// Output file (default: stdout).
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Render the similarity map of an environment.
    Map {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        seeds: SeedArgs,
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        render: RenderArgs,
        /// svg, dot, pajek or json (default: from the --out extension, else svg).
        #[arg(long)]
        format: Option<String>,
        /// Output file (default: stdout).
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Degree, closeness, betweenness and eigenvector centrality.
    Centrality {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        seeds: SeedArgs,
        #[command(flatten)]
        graph: GraphArgs,
        /// Comma-separated subset of degree,closeness,betweenness,eigenvector.
        #[arg(long)]
        measures: Option<String>,
        /// Report fractions as percentages.
        #[arg(long)]
        percent: bool,
        /// json or text.
        #[arg(long)]
        format: Option<String>,
        /// Output file (default: stdout).
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Full run: table, report JSON and the map in every export format.
    Report {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        seeds: SeedArgs,
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        render: RenderArgs,
        /// Citation window in years (default: 2).
        /// Citation window in years (default: 2).
        #[arg(long)]
        window: Option<u32>,
        /// Output directory (default: citefield-report).
        #[arg(long, value_name = "DIR")]
        out_dir: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Corpus JSON written by `ingest`.
    #[arg(long, value_name = "FILE")]
    pub corpus: Option<PathBuf>,
    /// citing,cited,count edge list; repeat to merge several indexes.
    #[arg(long = "edges", value_name = "FILE")]
    pub edges: Vec<PathBuf>,
    /// Source-index tag for each --edges file, in order.
    #[arg(long = "source", value_name = "TAG")]
    pub sources: Vec<String>,
    /// abbrev,title,sources journal list.
    #[arg(long, value_name = "FILE")]
    pub journals: Option<PathBuf>,
    /// journal,year,citable_items,age,cites,self_cites records.
    #[arg(long, value_name = "FILE")]
    pub citable: Option<PathBuf>,
    /// Data year of the edge lists.
    #[arg(long)]
    pub year: Option<i32>,
}

#[derive(Debug, Args)]
pub struct SeedArgs {
    /// Environment JSON written by `env`, instead of a corpus and seeds.
    #[arg(long = "env", value_name = "FILE")]
    pub environment: Option<PathBuf>,
    /// Seed journal abbreviation; repeat or separate with commas.
    #[arg(long = "seed", alias = "seeds", value_delimiter = ',', value_name = "ABBREV")]
    pub seeds: Vec<String>,
    /// cited (journals citing the seed) or citing (journals the seed cites).
    #[arg(long)]
    pub mode: Option<Mode>,
    /// Minimum share of the seed's citations for admission.
    #[arg(long)]
    pub share: Option<f64>,
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    /// cosine or pearson.
    #[arg(long)]
    pub measure: Option<Measure>,
    /// Keep pairs with similarity at or above this value.
    #[arg(long = "threshold-cosine", value_name = "T")]
    pub threshold: Option<f64>,
    /// Keep within-journal self-citations in the profiles.
    #[arg(long)]
    pub keep_diagonal: bool,
    /// Geodesics with edge length 1/weight instead of hop counts.
    #[arg(long)]
    pub weighted_paths: bool,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    /// Seed for the map layout (default: 1).
    #[arg(long, value_name = "N")]
    pub layout_seed: Option<u64>,
    /// Label annotation; only `betweenness` is supported.
    #[arg(long, value_name = "MEASURE")]
    pub annotate: Option<String>,
}

fn set<T: Clone>(target: &mut T, value: &Option<T>) {
    if let Some(v) = value {
        *target = v.clone();
    }
}

fn set_opt<T: Clone>(target: &mut Option<T>, value: &Option<T>) {
    if value.is_some() {
        *target = value.clone();
    }
}

impl InputArgs {
    pub fn apply(&self, c: &mut RunConfig) {
        set_opt(&mut c.corpus, &self.corpus);
        if !self.edges.is_empty() {
            c.edges = self.edges.clone();
        }
        if !self.sources.is_empty() {
            c.sources = self.sources.clone();
        }
        set_opt(&mut c.journals, &self.journals);
        set_opt(&mut c.citable, &self.citable);
        set_opt(&mut c.year, &self.year);
    }
}

impl SeedArgs {
    pub fn apply(&self, c: &mut RunConfig) {
        set_opt(&mut c.environment, &self.environment);
        if !self.seeds.is_empty() {
            c.seeds = self.seeds.clone();
        }
        set(&mut c.mode, &self.mode);
        set(&mut c.share_threshold, &self.share);
    }
}

impl GraphArgs {
    pub fn apply(&self, c: &mut RunConfig) {
        set(&mut c.measure, &self.measure);
        set(&mut c.cosine_threshold, &self.threshold);
        c.keep_diagonal |= self.keep_diagonal;
        c.weighted_paths |= self.weighted_paths;
    }
}

impl RenderArgs {
    pub fn apply(&self, c: &mut RunConfig) -> Result<(), String> {
        set(&mut c.layout_seed, &self.layout_seed);
        match self.annotate.as_deref().map(str::to_ascii_lowercase).as_deref() {
            None => {}
            Some("betweenness") => c.annotate_betweenness = true,
            Some("none") => c.annotate_betweenness = false,
            Some(other) => return Err(format!("unknown annotation {other:?}, expected betweenness or none")),
        }
        Ok(())
    }
}
