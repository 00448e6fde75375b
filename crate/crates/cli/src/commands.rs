// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use citefield::centrality::{centrality_report, CentralityOptions, CentralityReport, MeasureSet, PathMetric};
use citefield::corpus::{
    load_citable_records, load_edge_list, load_edge_list_tagged, load_journal_list, CitableTable, CitationMatrix,
    CorpusError,
};
use citefield::environment::{extract, extract_union, EnvironmentSpec, LocalEnvironment, Mode};
use citefield::indicators::{impact_factor, journal_indicators, JournalIndicators};
use citefield::render::{glyphs, layout, render_string, ExportFormat, GlyphConfig, LayoutConfig, RenderedMap};
use citefield::report::{format_table, table_rows, TableRow};
use citefield::similarity::{build_graph, Measure, ProfileSet, SimilarityGraph};
use citefield::Execution;

use crate::config::{Metadata, RunConfig};
use crate::error::{CliError, Result};

fn usage(message: impl Into<String>) -> CliError {
    CliError::Usage(message.into())
}

fn input_error(path: &Path, err: CorpusError) -> CliError {
    match err {
        err @ CorpusError::Io { .. } => CliError::Corpus(err),
        source => CliError::Input {
            path: path.to_path_buf(),
            source,
        },
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json {
        path: path.to_path_buf(),
        source,
    })
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("output serializes");
    text.push('\n');
    text
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes to `path`, or to standard output when there is none.
fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(path) => write_file(path, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| CliError::Io {
                    path: PathBuf::from("<stdout>"),
                    source,
                })
        }
    }
}

/// Rejects option values no command can use.
pub fn validate(config: &RunConfig) -> Result<()> {
    if !(0.0..=1.0).contains(&config.share_threshold) {
        return Err(usage(format!(
            "--share must lie in [0, 1], got {}",
            config.share_threshold
        )));
    }
    let range = match config.measure {
        Measure::Cosine => 0.0..=1.0,
        Measure::Pearson => -1.0..=1.0,
    };
    if !range.contains(&config.cosine_threshold) {
        return Err(usage(format!(
            "--threshold-cosine {} is outside the range of {}",
            config.cosine_threshold, config.measure
        )));
    }
    if config.window == 0 {
        return Err(usage("--window must be at least 1"));
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Corpus {
    pub matrix: CitationMatrix,
    #[serde(default)]
    pub citable: Option<CitableTable>,
}

#[derive(Debug, Serialize, Deserialize)]
struct CorpusFile {
    metadata: Metadata,
    corpus: Corpus,
}

fn load_corpus(config: &RunConfig) -> Result<Corpus> {
    if let Some(path) = &config.corpus {
        if !config.edges.is_empty() {
            return Err(usage("--corpus and --edges cannot be combined"));
        }
        let file: CorpusFile = read_json(path)?;
        return Ok(file.corpus);
    }
    if config.edges.is_empty() {
        return Err(usage("an input is required: --corpus FILE or --edges FILE"));
    }
    let year = config
        .year
        .ok_or_else(|| usage("--year is required when reading edge lists"))?;
    if !config.sources.is_empty() && config.sources.len() != config.edges.len() {
        return Err(usage(format!(
            "{} --source tags given for {} --edges files",
            config.sources.len(),
            config.edges.len()
        )));
    }
    let mut matrix: Option<CitationMatrix> = None;
    for (k, path) in config.edges.iter().enumerate() {
        let next = match config.sources.get(k) {
            Some(tag) => load_edge_list_tagged(path, year, tag),
            None => load_edge_list(path, year),
        }
        .map_err(|err| input_error(path, err))?;
        matrix = Some(match matrix {
            None => next,
            Some(acc) => {
                acc.merge(&next)?.0
            }
        });
    }
    let mut matrix = matrix.expect("at least one edge list");
    if let Some(path) = &config.journals {
        let journals = load_journal_list(path).map_err(|err| input_error(path, err))?;
        matrix = matrix.annotate(&journals)?.0;
    }
    let citable = match &config.citable {
        Some(path) => Some(load_citable_records(path, matrix.registry()).map_err(|err| input_error(path, err))?),
        None => None,
    };
    Ok(Corpus { matrix, citable })
}

fn resolve_seeds(matrix: &CitationMatrix, seeds: &[String]) -> Result<Vec<usize>> {
    if seeds.is_empty() {
        return Err(usage("at least one --seed is required"));
    }
    seeds
        .iter()
        .map(|s| matrix.registry().resolve(s).map_err(CliError::from))
        .collect()
}

fn environment_of(corpus: &Corpus, config: &RunConfig, exec: Execution) -> Result<LocalEnvironment> {
    let seeds = resolve_seeds(&corpus.matrix, &config.seeds)?;
    let spec = EnvironmentSpec::new(seeds, config.mode).with_share(config.share_threshold);
    let env = if spec.seeds.len() == 1 {
        extract(&corpus.matrix, &spec)?
    } else {
        extract_union(&corpus.matrix, &spec, exec)?
    };
    Ok(env)
}

#[derive(Debug, Serialize, Deserialize)]
pub struct EnvMember {
    pub journal: String,
    pub id: usize,
    pub seed: bool,
    /// Seeds whose citations admitted this member.
    pub admitted_by: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct EnvSummary {
    pub year: i32,
    pub seeds: Vec<String>,
    pub mode: Mode,
    pub share_threshold: f64,
    pub members: Vec<EnvMember>,
    pub isolated_seeds: Vec<String>,
    pub warnings: Vec<String>,
}

fn env_summary(env: &LocalEnvironment) -> EnvSummary {
    let name = |id: usize| {
        env.position(id)
            .map(|p| env.abbrev(p).to_string())
            .unwrap_or_else(|| id.to_string())
    };
    EnvSummary {
        year: env.submatrix.year(),
        seeds: env.seeds.iter().map(|&s| name(s)).collect(),
        mode: env.mode,
        share_threshold: env.share_threshold,
        members: env
            .members
            .iter()
            .enumerate()
            .map(|(p, &id)| EnvMember {
                journal: env.abbrev(p).to_string(),
                id,
                seed: env.seeds.contains(&id),
                admitted_by: env
                    .provenance
                    .get(&id)
                    .map(|s| s.iter().map(|&seed| name(seed)).collect())
                    .unwrap_or_default(),
            })
            .collect(),
        isolated_seeds: env.isolated_seeds.iter().map(|&s| name(s)).collect(),
        warnings: env.warnings.clone(),
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct EnvFile {
    metadata: Metadata,
    config: Value,
    summary: EnvSummary,
    environment: LocalEnvironment,
}

/// The environment named by `--env`, or extracted from the input corpus.
fn obtain_environment(config: &RunConfig, exec: Execution) -> Result<(LocalEnvironment, Option<Corpus>)> {
    if let Some(path) = &config.environment {
        if config.corpus.is_some() || !config.edges.is_empty() || !config.seeds.is_empty() {
            return Err(usage("--env cannot be combined with --corpus, --edges or --seed"));
        }
        let file: EnvFile = read_json(path)?;
        return Ok((file.environment, None));
    }
    let corpus = load_corpus(config)?;
    let env = environment_of(&corpus, config, exec)?;
    Ok((env, Some(corpus)))
}

fn similarity(env: &LocalEnvironment, config: &RunConfig, exec: Execution) -> Result<SimilarityGraph> {
    let profiles = ProfileSet::from_environment(env, config.keep_diagonal);
    let graph = build_graph(&profiles, config.cosine_threshold, config.measure, exec)?;
    Ok(graph)
}

fn path_metric(config: &RunConfig) -> PathMetric {
    if config.weighted_paths {
        PathMetric::InverseWeight
    } else {
        PathMetric::Unweighted
    }
}

fn centrality(graph: &SimilarityGraph, measures: MeasureSet, config: &RunConfig, exec: Execution) -> Result<CentralityReport> {
    let options = CentralityOptions {
        measures,
        paths: path_metric(config),
        ..CentralityOptions::default()
    };
    let report = centrality_report(graph, &options, exec)?;
    Ok(report)
}

fn rendered_map(
    env: &LocalEnvironment,
    graph: &SimilarityGraph,
    betweenness: Option<&CentralityReport>,
    config: &RunConfig,
    exec: Execution,
) -> RenderedMap {
    let layout_config = LayoutConfig::default();
    let coords = layout(graph, config.layout_seed, &layout_config, exec);
    let fractions: Option<Vec<f64>> = betweenness
        .filter(|_| config.annotate_betweenness)
        .map(|r| r.members.iter().map(|m| m.betweenness.unwrap_or(0.0)).collect());
    let glyph_config = GlyphConfig {
        annotate_betweenness: config.annotate_betweenness,
        ..GlyphConfig::default()
    };
    glyphs(
        env,
        graph,
        &coords,
        fractions.as_deref(),
        config.layout_seed,
        &layout_config,
        &glyph_config,
    )
}

#[derive(Serialize)]
struct MapFile<'a> {
    metadata: &'a Metadata,
    map: &'a RenderedMap,
}

/// The map in `format` with the run metadata embedded.
pub fn render_with_metadata(map: &RenderedMap, format: ExportFormat, metadata: &Metadata) -> Result<String> {
    Ok(match format {
        ExportFormat::Json => to_json(&MapFile { metadata, map }),
        ExportFormat::Svg => {
            let text = render_string(map, format)?;
            let at = text.find("<rect").expect("svg background");
            format!("{}<!-- {} -->\n{}", &text[..at], metadata.line(), &text[at..])
        }
        ExportFormat::Dot => format!("// {}\n{}", metadata.line(), render_string(map, format)?),
        ExportFormat::Pajek => format!("% {}\n{}", metadata.line(), render_string(map, format)?),
    })
}

fn output_format(config: &RunConfig) -> Result<ExportFormat> {
    if let Some(name) = &config.format {
        return Ok(name.parse()?);
    }
    let from_extension = config
        .out
        .as_deref()
        .and_then(Path::extension)
        .and_then(|e| e.to_str())
        .and_then(|e| e.parse().ok());
    Ok(from_extension.unwrap_or(ExportFormat::Svg))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum TextOrJson {
    Json,
    Text,
}

fn text_or_json(config: &RunConfig) -> Result<TextOrJson> {
    match config.format.as_deref().map(str::to_ascii_lowercase).as_deref() {
        None | Some("json") => Ok(TextOrJson::Json),
        Some("text") | Some("txt") => Ok(TextOrJson::Text),
        Some(other) => Err(usage(format!("unknown format {other:?}, expected json or text"))),
    }
}

pub fn ingest(config: &RunConfig) -> Result<()> {
    let corpus = load_corpus(config)?;
    let metadata = Metadata::new("ingest", config)?;
    eprintln!(
        "{} journals, {} non-zero cells, {} citations, {} citable records",
        corpus.matrix.n(),
        corpus.matrix.nnz(),
        corpus.matrix.grand_total(),
        corpus.citable.as_ref().map_or(0, CitableTable::len)
    );
    emit(config.out.as_deref(), &to_json(&CorpusFile { metadata, corpus }))
}

#[derive(Serialize)]
struct IndicatorsFile {
    metadata: Metadata,
    config: Value,
    year: i32,
    window: u32,
    indicators: Vec<JournalIndicators>,
}

fn indicator_rows(corpus: &Corpus, ids: &[usize], window: u32) -> Result<Vec<JournalIndicators>> {
    ids.iter()
        .map(|&id| {
            journal_indicators(
                &corpus.matrix,
                corpus.citable.as_ref(),
                id,
                corpus.matrix.year(),
                window,
            )
            .map_err(CliError::from)
        })
        .collect()
}

fn format_option(v: Option<f64>, digits: usize) -> String {
    v.map(|v| format!("{v:.digits$}")).unwrap_or_else(|| "n/a".into())
}

fn indicators_text(rows: &[JournalIndicators]) -> String {
    let width = rows
        .iter()
        .map(|r| r.journal.chars().count())
        .chain(["Journal".len()])
        .max()
        .unwrap_or(0);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<width$}  {:>13}  {:>8}  {:>7}  {:>11}  {:>12}  {:>14}",
        "Journal", "Impact Factor", "Quasi-IF", "h-index", "Total cited", "Total citing", "Self-citations"
    );
    for r in rows {
        let _ = writeln!(
            out,
            "{:<width$}  {:>13}  {:>8}  {:>7}  {:>11}  {:>12}  {:>14}",
            r.journal,
            format_option(r.impact_factor, 3),
            format_option(r.quasi_impact_factor, 3),
            r.h_index,
            r.total_cited,
            r.total_citing,
            r.self_citations
        );
    }
    out
}

pub fn indicators(config: &RunConfig, journals: &[String]) -> Result<()> {
    let format = text_or_json(config)?;
    let corpus = load_corpus(config)?;
    let ids: Vec<usize> = if journals.is_empty() {
        (0..corpus.matrix.n()).collect()
    } else {
        journals
            .iter()
            .map(|j| corpus.matrix.registry().resolve(j))
            .collect::<std::result::Result<_, _>>()?
    };
    let rows = indicator_rows(&corpus, &ids, config.window)?;
    let text = match format {
        TextOrJson::Text => indicators_text(&rows),
        TextOrJson::Json => to_json(&IndicatorsFile {
            metadata: Metadata::new("indicators", config)?,
            config: config.fingerprint()?,
            year: corpus.matrix.year(),
            window: config.window,
            indicators: rows,
        }),
    };
    emit(config.out.as_deref(), &text)
}

pub fn env(config: &RunConfig, exec: Execution) -> Result<()> {
    let corpus = load_corpus(config)?;
    let environment = environment_of(&corpus, config, exec)?;
    let summary = env_summary(&environment);
    eprintln!(
        "{} members in the {} environment of {}",
        summary.members.len(),
        summary.mode,
        summary.seeds.join(", ")
    );
    let file = EnvFile {
        metadata: Metadata::new("env", config)?,
        config: config.fingerprint()?,
        summary,
        environment,
    };
    emit(config.out.as_deref(), &to_json(&file))
}

pub fn map(config: &RunConfig, exec: Execution) -> Result<()> {
    let format = output_format(config)?;
    let (environment, _) = obtain_environment(config, exec)?;
    let graph = similarity(&environment, config, exec)?;
    let betweenness = if config.annotate_betweenness {
        let measures = MeasureSet {
            degree: false,
            closeness: false,
            betweenness: true,
            eigenvector: false,
        };
        Some(centrality(&graph, measures, config, exec)?)
    } else {
        None
    };
    let map = rendered_map(&environment, &graph, betweenness.as_ref(), config, exec);
    let metadata = Metadata::new("map", config)?;
    emit(config.out.as_deref(), &render_with_metadata(&map, format, &metadata)?)
}

#[derive(Serialize)]
struct CentralityFile<'a> {
    metadata: Metadata,
    config: Value,
    /// `fraction` or `percent`.
    units: &'static str,
    centrality: &'a CentralityReport,
}

fn as_percent(report: &mut CentralityReport) {
    let pct = |v: &mut Option<f64>| {
        if let Some(x) = v {
            *x *= 100.0;
        }
    };
    for m in &mut report.members {
        pct(&mut m.degree);
        pct(&mut m.closeness);
        pct(&mut m.betweenness);
        pct(&mut m.eigenvector);
    }
}

fn centrality_text(report: &CentralityReport, percent: bool) -> String {
    let digits = if percent { 2 } else { 4 };
    let width = report
        .members
        .iter()
        .map(|m| m.journal.chars().count())
        .chain(["Journal".len()])
        .max()
        .unwrap_or(0);
    let unit = if percent { " (%)" } else { "" };
    let headers = [
        format!("Betweenness{unit}"),
        format!("Closeness{unit}"),
        format!("Degree{unit}"),
        format!("Eigenvector{unit}"),
    ];
    let mut out = String::new();
    let _ = write!(out, "{:<width$}", "Journal");
    for h in &headers {
        let _ = write!(out, "  {h:>15}");
    }
    out.push('\n');
    for m in &report.members {
        let _ = write!(out, "{:<width$}", m.journal);
        for v in [m.betweenness, m.closeness, m.degree, m.eigenvector] {
            let _ = write!(out, "  {:>15}", format_option(v, digits));
        }
        out.push('\n');
    }
    out
}

pub fn centrality_cmd(config: &RunConfig, exec: Execution) -> Result<()> {
    let format = text_or_json(config)?;
    let measures: MeasureSet = config.measures.parse().map_err(usage)?;
    let (environment, _) = obtain_environment(config, exec)?;
    let graph = similarity(&environment, config, exec)?;
    let mut report = centrality(&graph, measures, config, exec)?;
    if config.percent {
        as_percent(&mut report);
    }
    let text = match format {
        TextOrJson::Text => centrality_text(&report, config.percent),
        TextOrJson::Json => to_json(&CentralityFile {
            metadata: Metadata::new("centrality", config)?,
            config: config.fingerprint()?,
            units: if config.percent { "percent" } else { "fraction" },
            centrality: &report,
        }),
    };
    emit(config.out.as_deref(), &text)
}

#[derive(Debug, Serialize, Deserialize)]
pub struct NamedEdge {
    pub source: String,
    pub target: String,
    pub weight: f64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SimilaritySummary {
    pub measure: Measure,
    pub threshold: f64,
    pub keep_diagonal: bool,
    pub edges: Vec<NamedEdge>,
    pub isolates: Vec<String>,
}

/// Contents of `report.json`.
#[derive(Debug, Serialize, Deserialize)]
pub struct ReportFile {
    pub metadata: Metadata,
    pub config: Value,
    pub year: i32,
    pub window: u32,
    pub seeds: Vec<String>,
    pub environment: EnvSummary,
    pub indicators: Vec<JournalIndicators>,
    pub similarity: SimilaritySummary,
    pub centrality: CentralityReport,
    pub table: Vec<TableRow>,
    pub warnings: Vec<String>,
}

pub const DEFAULT_REPORT_DIR: &str = "citefield-report";

pub fn report(config: &RunConfig, exec: Execution) -> Result<()> {
    if config.environment.is_some() {
        return Err(usage("report reads a corpus; --env is not accepted"));
    }
    let corpus = load_corpus(config)?;
    let environment = environment_of(&corpus, config, exec)?;
    let graph = similarity(&environment, config, exec)?;
    let central = centrality(&graph, MeasureSet::default(), config, exec)?;
    let map = rendered_map(&environment, &graph, Some(&central), config, exec);
    let metadata = Metadata::new("report", config)?;

    let year = corpus.matrix.year();
    let registry = corpus.matrix.registry();
    let seed_ids = resolve_seeds(&corpus.matrix, &config.seeds)?;
    let mut listed = BTreeSet::new();
    let seed_rows: Vec<(String, String, Option<f64>)> = seed_ids
        .iter()
        .filter(|&&id| listed.insert(id))
        .map(|&id| {
            let record = registry.get(id).expect("resolved id");
            let title = if record.title.is_empty() {
                record.abbrev.clone()
            } else {
                record.title.clone()
            };
            let impact = corpus
                .citable
                .as_ref()
                .and_then(|t| impact_factor(t, id, year, config.window).ok())
                .map(|r| r.impact_factor);
            (record.abbrev.clone(), title, impact)
        })
        .collect();
    let table = table_rows(
        seed_rows.iter().map(|(a, t, i)| (a.as_str(), t.as_str(), *i)),
        &central,
    );
    let text_table = format_table(&table);

    let label = |k: usize| graph.labels[k].clone();
    let similarity_summary = SimilaritySummary {
        measure: graph.measure,
        threshold: graph.threshold_applied,
        keep_diagonal: config.keep_diagonal,
        edges: graph
            .edges
            .iter()
            .map(|e| NamedEdge {
                source: label(e.source),
                target: label(e.target),
                weight: e.weight,
            })
            .collect(),
        isolates: graph.isolates.iter().map(|&k| label(k)).collect(),
    };
    let mut warnings = environment.warnings.clone();
    warnings.extend(graph.warnings.iter().cloned());
    warnings.extend(central.warnings.iter().cloned());
    let file = ReportFile {
        metadata: metadata.clone(),
        config: config.fingerprint()?,
        year,
        window: config.window,
        seeds: seed_rows.iter().map(|(a, _, _)| a.clone()).collect(),
        environment: env_summary(&environment),
        indicators: indicator_rows(&corpus, &environment.members, config.window)?,
        similarity: similarity_summary,
        centrality: central,
        table,
        warnings,
    };

    let dir = config
        .out_dir
        .clone()
        .unwrap_or_else(|| PathBuf::from(DEFAULT_REPORT_DIR));
    std::fs::create_dir_all(&dir).map_err(|source| CliError::Io {
        path: dir.clone(),
        source,
    })?;
    write_file(&dir.join("report.json"), &to_json(&file))?;
    write_file(&dir.join("table.txt"), &text_table)?;
    for format in ExportFormat::ALL {
        let path = dir.join(format!("map.{}", format.extension()));
        write_file(&path, &render_with_metadata(&map, format, &metadata)?)?;
    }
    emit(None, &text_table)
}
