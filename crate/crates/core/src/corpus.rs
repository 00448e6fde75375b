// SPDX-License-Identifier: Apache-2.0

//! Journal identities and aggregated journal-to-journal citation matrices.
//!
//! Journals are identified by abbreviation. Two abbreviations denote the same
//! journal when they are equal after trimming surrounding whitespace and case
//! folding. Ids are dense and assigned in insertion order.
//!
//! A [`CitationMatrix`] stores citations for one data year with the citing
//! journal as the row and the cited journal as the column. Within-journal
//! self-citations live on the diagonal and are never dropped.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fs::File;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },
    #[error("no data rows in input")]
    Empty,
    #[error("journal id {id} out of range for {n} journals")]
    Index { id: usize, n: usize },
    #[error("duplicate journal abbreviation {0:?}")]
    DuplicateJournal(String),
    #[error("unknown journal {0:?}")]
    UnknownJournal(String),
    #[error("cannot merge matrices for years {0} and {1}")]
    YearMismatch(i32, i32),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = CorpusError> = std::result::Result<T, E>;

/// Canonical identity key of a journal abbreviation.
pub fn journal_key(abbrev: &str) -> String {
    abbrev.trim().to_lowercase()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JournalRecord {
    pub id: usize,
    pub title: String,
    pub abbrev: String,
    /// Source index tags, e.g. `SCI` or `SSCI`.
    #[serde(default)]
    pub sources: BTreeSet<String>,
}

/// A collection of journals with unique abbreviations and contiguous ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "Vec<JournalRecord>", try_from = "Vec<JournalRecord>")]
pub struct JournalRegistry {
    records: Vec<JournalRecord>,
    by_key: HashMap<String, usize>,
}

impl JournalRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn records(&self) -> &[JournalRecord] {
        &self.records
    }

    pub fn get(&self, id: usize) -> Option<&JournalRecord> {
        self.records.get(id)
    }

    /// Abbreviation of `id`. Panics on an invalid id.
    pub fn abbrev(&self, id: usize) -> &str {
        &self.records[id].abbrev
    }

    pub fn lookup(&self, abbrev: &str) -> Option<usize> {
        self.by_key.get(&journal_key(abbrev)).copied()
    }

    /// Resolves an abbreviation or fails with [`CorpusError::UnknownJournal`].
    pub fn resolve(&self, abbrev: &str) -> Result<usize> {
        self.lookup(abbrev)
            .ok_or_else(|| CorpusError::UnknownJournal(abbrev.trim().to_string()))
    }

    /// Adds a new journal. Fails if the abbreviation is already registered.
    pub fn insert<I, S>(&mut self, abbrev: &str, title: &str, sources: I) -> Result<usize>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let key = journal_key(abbrev);
        if self.by_key.contains_key(&key) {
            return Err(CorpusError::DuplicateJournal(abbrev.trim().to_string()));
        }
        let id = self.records.len();
        self.records.push(JournalRecord {
            id,
            title: title.trim().to_string(),
            abbrev: abbrev.trim().to_string(),
            sources: sources.into_iter().map(Into::into).collect(),
        });
        self.by_key.insert(key, id);
        Ok(id)
    }

    /// Returns the id of `abbrev`, registering it with an empty title if new.
    pub fn intern(&mut self, abbrev: &str) -> usize {
        match self.lookup(abbrev) {
            Some(id) => id,
            None => self
                .insert(abbrev, "", std::iter::empty::<String>())
                .expect("key checked above"),
        }
    }

    fn record_mut(&mut self, id: usize) -> &mut JournalRecord {
        &mut self.records[id]
    }
}

impl From<JournalRegistry> for Vec<JournalRecord> {
    fn from(registry: JournalRegistry) -> Self {
        registry.records
    }
}

impl TryFrom<Vec<JournalRecord>> for JournalRegistry {
    type Error = CorpusError;

    fn try_from(records: Vec<JournalRecord>) -> Result<Self> {
        let mut registry = JournalRegistry::new();
        for (expected, record) in records.into_iter().enumerate() {
            if record.id != expected {
                return Err(CorpusError::Index {
                    id: record.id,
                    n: expected,
                });
            }
            registry.insert(&record.abbrev, &record.title, record.sources)?;
        }
        Ok(registry)
    }
}

/// Non-fatal conditions met while merging registries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum MergeWarning {
    /// Both records carried a non-empty title and they differ; `kept` wins.
    TitleConflict {
        abbrev: String,
        kept: String,
        dropped: String,
    },
}

impl std::fmt::Display for MergeWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MergeWarning::TitleConflict {
                abbrev,
                kept,
                dropped,
            } => write!(
                f,
                "journal {abbrev}: conflicting titles {kept:?} and {dropped:?}, keeping the first"
            ),
        }
    }
}

#[derive(Debug, Clone)]
pub struct MergedRegistry {
    pub registry: JournalRegistry,
    /// Merged id of every record of the second input, indexed by its old id.
    pub second_ids: Vec<usize>,
    pub warnings: Vec<MergeWarning>,
}

/// Unifies two registries by journal key.
///
/// Records of `a` keep their ids; records of `b` that are new get the next
/// free ids in their original order. Unified records carry the union of
/// source tags.
pub fn merge_registries(a: &JournalRegistry, b: &JournalRegistry) -> MergedRegistry {
    let mut registry = a.clone();
    let mut warnings = Vec::new();
    let mut second_ids = Vec::with_capacity(b.len());
    for record in b.records() {
        let id = match registry.lookup(&record.abbrev) {
            Some(id) => {
                let existing = registry.record_mut(id);
                existing.sources.extend(record.sources.iter().cloned());
                if existing.title.is_empty() {
                    existing.title = record.title.clone();
                } else if !record.title.is_empty() && existing.title != record.title {
                    warnings.push(MergeWarning::TitleConflict {
                        abbrev: existing.abbrev.clone(),
                        kept: existing.title.clone(),
                        dropped: record.title.clone(),
                    });
                }
                id
            }
            None => registry
                .insert(&record.abbrev, &record.title, record.sources.iter().cloned())
                .expect("abbreviation is new"),
        };
        second_ids.push(id);
    }
    for warning in &warnings {
        log::warn!("{warning}");
    }
    MergedRegistry {
        registry,
        second_ids,
        warnings,
    }
}

/// Row, column and diagonal sums for one journal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Totals {
    pub total_cited: u64,
    pub total_citing: u64,
    pub self_citations: u64,
}

/// Sparse journal-by-journal citation counts for one data year.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CitationMatrix {
    year: i32,
    registry: JournalRegistry,
    rows: Vec<BTreeMap<usize, u64>>,
}

impl CitationMatrix {
    /// An all-zero matrix over `registry`.
    pub fn new(year: i32, registry: JournalRegistry) -> Self {
        let rows = vec![BTreeMap::new(); registry.len()];
        Self {
            year,
            registry,
            rows,
        }
    }

    /// Builds a matrix from dense rows, registering `labels` in order.
    pub fn from_dense<S: AsRef<str>>(year: i32, labels: &[S], dense: &[Vec<u64>]) -> Result<Self> {
        let mut registry = JournalRegistry::new();
        for label in labels {
            registry.insert(label.as_ref(), "", std::iter::empty::<String>())?;
        }
        let n = registry.len();
        let mut matrix = Self::new(year, registry);
        for (i, row) in dense.iter().enumerate() {
            if i >= n || row.len() != n {
                return Err(CorpusError::Index { id: i, n });
            }
            for (j, &count) in row.iter().enumerate() {
                matrix.add(i, j, count)?;
            }
        }
        Ok(matrix)
    }

    pub fn year(&self) -> i32 {
        self.year
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn registry(&self) -> &JournalRegistry {
        &self.registry
    }

    fn check(&self, id: usize) -> Result<()> {
        if id < self.n() {
            Ok(())
        } else {
            Err(CorpusError::Index { id, n: self.n() })
        }
    }

    /// Adds `count` citations from `citing` to `cited`.
    pub fn add(&mut self, citing: usize, cited: usize, count: u64) -> Result<()> {
        self.check(citing)?;
        self.check(cited)?;
        if count > 0 {
            *self.rows[citing].entry(cited).or_insert(0) += count;
        }
        Ok(())
    }

    /// Registers a journal (if new) and grows the matrix accordingly.
    pub fn intern(&mut self, abbrev: &str) -> usize {
        let id = self.registry.intern(abbrev);
        if id == self.rows.len() {
            self.rows.push(BTreeMap::new());
        }
        id
    }

    pub fn get(&self, citing: usize, cited: usize) -> u64 {
        self.rows
            .get(citing)
            .and_then(|row| row.get(&cited))
            .copied()
            .unwrap_or(0)
    }

    /// Non-zero entries of one citing row in cited-id order.
    pub fn row(&self, citing: usize) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.rows[citing].iter().map(|(&j, &c)| (j, c))
    }

    /// Non-zero entries of one cited column in citing-id order.
    pub fn column(&self, cited: usize) -> Vec<(usize, u64)> {
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(i, row)| row.get(&cited).map(|&c| (i, c)))
            .collect()
    }

    /// All non-zero entries as `(citing, cited, count)` in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().map(move |(&j, &c)| (i, j, c)))
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(BTreeMap::len).sum()
    }

    pub fn grand_total(&self) -> u64 {
        self.entries().map(|(_, _, c)| c).sum()
    }

    pub fn totals(&self, j: usize) -> Result<Totals> {
        self.check(j)?;
        let total_citing = self.rows[j].values().sum();
        let total_cited = self
            .rows
            .iter()
            .filter_map(|row| row.get(&j))
            .sum();
        Ok(Totals {
            total_cited,
            total_citing,
            self_citations: self.get(j, j),
        })
    }

    /// Column sums for every journal, in one pass.
    pub fn cited_totals(&self) -> Vec<u64> {
        let mut sums = vec![0; self.n()];
        for (_, j, c) in self.entries() {
            sums[j] += c;
        }
        sums
    }

    /// The matrix restricted to `members` (rows and columns), re-indexed in
    /// the given order. Registry records keep titles and source tags.
    pub fn restrict(&self, members: &[usize]) -> Result<CitationMatrix> {
        let mut registry = JournalRegistry::new();
        let mut local = HashMap::with_capacity(members.len());
        for (k, &id) in members.iter().enumerate() {
            self.check(id)?;
            let record = &self.registry.records[id];
            registry.insert(&record.abbrev, &record.title, record.sources.iter().cloned())?;
            local.insert(id, k);
        }
        let mut sub = CitationMatrix::new(self.year, registry);
        for (k, &id) in members.iter().enumerate() {
            for (j, c) in self.row(id) {
                if let Some(&l) = local.get(&j) {
                    sub.add(k, l, c)?;
                }
            }
        }
        Ok(sub)
    }

    /// Combines the matrix of a second source index into this one.
    ///
    /// Journals are unified by key. A cell reported by both sources holds the
    /// same aggregated citation relation, so the larger count is kept rather
    /// than the sum.
    pub fn merge(&self, other: &CitationMatrix) -> Result<(CitationMatrix, Vec<MergeWarning>)> {
        if self.year != other.year {
            return Err(CorpusError::YearMismatch(self.year, other.year));
        }
        let merged = merge_registries(&self.registry, &other.registry);
        let mut rows = self.rows.clone();
        rows.resize(merged.registry.len(), BTreeMap::new());
        for (i, j, c) in other.entries() {
            let (mi, mj) = (merged.second_ids[i], merged.second_ids[j]);
            let cell = rows[mi].entry(mj).or_insert(0);
            *cell = (*cell).max(c);
        }
        Ok((
            CitationMatrix {
                year: self.year,
                registry: merged.registry,
                rows,
            },
            merged.warnings,
        ))
    }

    /// Adds titles and source tags from `journals`, registering journals
    /// that have no citations yet.
    pub fn annotate(&self, journals: &JournalRegistry) -> Result<(CitationMatrix, Vec<MergeWarning>)> {
        self.merge(&CitationMatrix::new(self.year, journals.clone()))
    }
}

/// Row, column and diagonal sums for journal `j`.
pub fn totals(m: &CitationMatrix, j: usize) -> Result<Totals> {
    m.totals(j)
}

#[derive(Serialize, Deserialize)]
struct MatrixFile {
    year: i32,
    journals: JournalRegistry,
    entries: Vec<(usize, usize, u64)>,
}

impl Serialize for CitationMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixFile {
            year: self.year,
            journals: self.registry.clone(),
            entries: self.entries().collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CitationMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let file = MatrixFile::deserialize(deserializer)?;
        let mut matrix = CitationMatrix::new(file.year, file.journals);
        for (i, j, c) in file.entries {
            matrix.add(i, j, c).map_err(serde::de::Error::custom)?;
        }
        Ok(matrix)
    }
}

fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|source| CorpusError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn csv_reader<R: Read>(reader: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader)
}

fn record_line(record: &csv::StringRecord) -> u64 {
    record.position().map(|p| p.line()).unwrap_or(0)
}

fn check_header(record: &csv::StringRecord, expected: &[&str]) -> Result<()> {
    let found: Vec<String> = record.iter().map(|f| f.to_lowercase()).collect();
    if found.len() != expected.len() || found.iter().zip(expected).any(|(f, e)| f != e) {
        return Err(CorpusError::Parse {
            line: record_line(record),
            message: format!("expected header `{}`", expected.join(",")),
        });
    }
    Ok(())
}

fn parse_count(field: &str, name: &str, line: u64) -> Result<u64> {
    field.parse::<u64>().map_err(|_| CorpusError::Parse {
        line,
        message: format!("{name} must be a non-negative integer, got {field:?}"),
    })
}

const EDGE_HEADER: [&str; 3] = ["citing", "cited", "count"];

/// Loads a `citing,cited,count` edge list. Duplicate rows are summed.
pub fn load_edge_list(path: impl AsRef<Path>, year: i32) -> Result<CitationMatrix> {
    let path = path.as_ref();
    read_edge_list(open(path)?, year)
}

/// Like [`load_edge_list`], tagging every journal with a source index.
pub fn load_edge_list_tagged(path: impl AsRef<Path>, year: i32, source: &str) -> Result<CitationMatrix> {
    let matrix = load_edge_list(path, year)?;
    let mut registry = JournalRegistry::new();
    for record in matrix.registry.records() {
        let mut sources = record.sources.clone();
        sources.insert(source.to_string());
        registry.insert(&record.abbrev, &record.title, sources)?;
    }
    Ok(CitationMatrix {
        registry,
        ..matrix
    })
}

pub fn read_edge_list<R: Read>(reader: R, year: i32) -> Result<CitationMatrix> {
    let mut csv = csv_reader(reader);
    let mut matrix = CitationMatrix::new(year, JournalRegistry::new());
    let mut header_seen = false;
    let mut rows = 0usize;
    for record in csv.records() {
        let record = record?;
        let line = record_line(&record);
        if !header_seen {
            check_header(&record, &EDGE_HEADER)?;
            header_seen = true;
            continue;
        }
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }
        if record.len() != 3 {
            return Err(CorpusError::Parse {
                line,
                message: format!("expected 3 columns, found {}", record.len()),
            });
        }
        if record[0].is_empty() || record[1].is_empty() {
            return Err(CorpusError::Parse {
                line,
                message: "empty journal abbreviation".into(),
            });
        }
        let count = parse_count(&record[2], "count", line)?;
        let citing = matrix.intern(&record[0]);
        let cited = matrix.intern(&record[1]);
        matrix.add(citing, cited, count)?;
        rows += 1;
    }
    if rows == 0 {
        return Err(CorpusError::Empty);
    }
    Ok(matrix)
}

/// Writes the non-zero entries as a `citing,cited,count` edge list.
pub fn write_edge_list<W: Write>(matrix: &CitationMatrix, writer: W) -> Result<()> {
    let mut csv = csv::Writer::from_writer(writer);
    csv.write_record(EDGE_HEADER)?;
    for (i, j, c) in matrix.entries() {
        csv.write_record([matrix.registry.abbrev(i), matrix.registry.abbrev(j), &c.to_string()])?;
    }
    csv.flush().map_err(|source| CorpusError::Io {
        path: PathBuf::from("<edge list>"),
        source,
    })?;
    Ok(())
}

const JOURNAL_HEADER: [&str; 3] = ["abbrev", "title", "sources"];

/// Loads an `abbrev,title,sources` journal list; `sources` holds tags
/// separated by `;`.
pub fn load_journal_list(path: impl AsRef<Path>) -> Result<JournalRegistry> {
    read_journal_list(open(path.as_ref())?)
}

pub fn read_journal_list<R: Read>(reader: R) -> Result<JournalRegistry> {
    let mut csv = csv_reader(reader);
    let mut registry = JournalRegistry::new();
    let mut header_seen = false;
    for record in csv.records() {
        let record = record?;
        let line = record_line(&record);
        if !header_seen {
            check_header(&record, &JOURNAL_HEADER)?;
            header_seen = true;
            continue;
        }
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }
        if record.len() != 3 || record[0].is_empty() {
            return Err(CorpusError::Parse {
                line,
                message: "expected `abbrev,title,sources`".into(),
            });
        }
        let sources = record[2]
            .split(';')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(String::from)
            .collect::<Vec<_>>();
        registry
            .insert(&record[0], &record[1], sources)
            .map_err(|err| CorpusError::Parse {
                line,
                message: err.to_string(),
            })?;
    }
    if !header_seen {
        return Err(CorpusError::Empty);
    }
    Ok(registry)
}

/// Citable items published by one journal in one year, and the citations
/// those items received at each age (citing year minus publication year).
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CitableRecord {
    pub journal_id: usize,
    pub year: i32,
    pub citable_items: u64,
    pub cites_received_by_age: BTreeMap<u32, u64>,
    pub self_cites_by_age: BTreeMap<u32, u64>,
}

impl CitableRecord {
    pub fn cites_at(&self, age: u32) -> u64 {
        self.cites_received_by_age.get(&age).copied().unwrap_or(0)
    }

    pub fn self_cites_at(&self, age: u32) -> u64 {
        self.self_cites_by_age.get(&age).copied().unwrap_or(0)
    }
}

/// Citable-item records keyed by `(journal id, publication year)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "Vec<CitableRecord>", from = "Vec<CitableRecord>")]
pub struct CitableTable {
    records: BTreeMap<(usize, i32), CitableRecord>,
}

impl CitableTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, record: CitableRecord) {
        self.records.insert((record.journal_id, record.year), record);
    }

    pub fn get(&self, journal: usize, year: i32) -> Option<&CitableRecord> {
        self.records.get(&(journal, year))
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn journals(&self) -> BTreeSet<usize> {
        self.records.keys().map(|&(j, _)| j).collect()
    }
}

impl From<CitableTable> for Vec<CitableRecord> {
    fn from(table: CitableTable) -> Self {
        table.records.into_values().collect()
    }
}

impl From<Vec<CitableRecord>> for CitableTable {
    fn from(records: Vec<CitableRecord>) -> Self {
        let mut table = CitableTable::new();
        for record in records {
            table.insert(record);
        }
        table
    }
}

const CITABLE_HEADER: [&str; 6] = ["journal", "year", "citable_items", "age", "cites", "self_cites"];

pub fn load_citable_records(path: impl AsRef<Path>, registry: &JournalRegistry) -> Result<CitableTable> {
    read_citable_records(open(path.as_ref())?, registry)
}

/// Reads `journal,year,citable_items,age,cites,self_cites` rows. Journals
/// must already be registered.
pub fn read_citable_records<R: Read>(reader: R, registry: &JournalRegistry) -> Result<CitableTable> {
    let mut csv = csv_reader(reader);
    let mut table = CitableTable::new();
    let mut header_seen = false;
    for record in csv.records() {
        let record = record?;
        let line = record_line(&record);
        if !header_seen {
            check_header(&record, &CITABLE_HEADER)?;
            header_seen = true;
            continue;
        }
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }
        if record.len() != 6 {
            return Err(CorpusError::Parse {
                line,
                message: format!("expected 6 columns, found {}", record.len()),
            });
        }
        let journal = registry.lookup(&record[0]).ok_or_else(|| CorpusError::Parse {
            line,
            message: format!("unknown journal {:?}", &record[0]),
        })?;
        let year: i32 = record[1].parse().map_err(|_| CorpusError::Parse {
            line,
            message: format!("year must be an integer, got {:?}", &record[1]),
        })?;
        let citable_items = parse_count(&record[2], "citable_items", line)?;
        let age = u32::try_from(parse_count(&record[3], "age", line)?).map_err(|_| CorpusError::Parse {
            line,
            message: "age out of range".into(),
        })?;
        let cites = parse_count(&record[4], "cites", line)?;
        let self_cites = parse_count(&record[5], "self_cites", line)?;
        if self_cites > cites {
            return Err(CorpusError::Parse {
                line,
                message: format!("self_cites {self_cites} exceeds cites {cites}"),
            });
        }
        let entry = table
            .records
            .entry((journal, year))
            .or_insert_with(|| CitableRecord {
                journal_id: journal,
                year,
                citable_items,
                ..Default::default()
            });
        if entry.citable_items != citable_items {
            return Err(CorpusError::Parse {
                line,
                message: format!(
                    "citable_items {citable_items} conflicts with {} given earlier for the same journal and year",
                    entry.citable_items
                ),
            });
        }
        if entry.cites_received_by_age.insert(age, cites).is_some() {
            return Err(CorpusError::Parse {
                line,
                message: format!("duplicate row for age {age}"),
            });
        }
        entry.self_cites_by_age.insert(age, self_cites);
    }
    if !header_seen {
        return Err(CorpusError::Empty);
    }
    Ok(table)
}
