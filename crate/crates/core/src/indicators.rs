// SPDX-License-Identifier: Apache-2.0

//! Scalar journal indicators.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::{CitableTable, CitationMatrix, CorpusError, Totals};

/// Default citation window of the impact factor: items published one and two
/// years before the citing year.
pub const DEFAULT_WINDOW: u32 = 2;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IndicatorError {
    #[error("journal {journal}: no citable-item record for publication year {year}")]
    MissingData { journal: usize, year: i32 },
    #[error("journal {journal}: no citable items in the {window}-year window before {year}")]
    Undefined { journal: usize, year: i32, window: u32 },
    #[error("citation window must be at least one year")]
    EmptyWindow,
}

/// Impact factor and quasi impact factor of one journal for one citing year.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImpactReport {
    pub journal_id: usize,
    pub year: i32,
    pub impact_factor: f64,
    pub quasi_impact_factor: f64,
    /// Citations in `year` to items of the window.
    pub numerator: u64,
    /// `numerator` without within-journal self-citations.
    pub quasi_numerator: u64,
    /// Citable items published in the window.
    pub denominator: u64,
}

/// Impact factor of `journal` in citing year `year` over a `window`-year
/// publication window (`DEFAULT_WINDOW` for the classic two-year IF).
///
/// The numerator sums, for each age `k` in `1..=window`, the citations
/// received at age `k` by the items published in `year - k`; the denominator
/// sums the citable items of those publication years. The quasi impact factor
/// drops within-journal self-citations from the numerator.
pub fn impact_factor(
    table: &CitableTable,
    journal: usize,
    year: i32,
    window: u32,
) -> Result<ImpactReport, IndicatorError> {
    if window == 0 {
        return Err(IndicatorError::EmptyWindow);
    }
    let mut numerator = 0u64;
    let mut self_cites = 0u64;
    let mut denominator = 0u64;
    for age in 1..=window {
        let published = year - age as i32;
        let record = table
            .get(journal, published)
            .ok_or(IndicatorError::MissingData {
                journal,
                year: published,
            })?;
        numerator += record.cites_at(age);
        self_cites += record.self_cites_at(age);
        denominator += record.citable_items;
    }
    if denominator == 0 {
        return Err(IndicatorError::Undefined {
            journal,
            year,
            window,
        });
    }
    let quasi_numerator = numerator - self_cites;
    Ok(ImpactReport {
        journal_id: journal,
        year,
        impact_factor: numerator as f64 / denominator as f64,
        quasi_impact_factor: quasi_numerator as f64 / denominator as f64,
        numerator,
        quasi_numerator,
        denominator,
    })
}

/// Largest `h` such that at least `h` of the counts are `>= h`.
///
/// Runs in linear time by bucketing counts above `len` together.
pub fn h_index(citation_counts: &[u64]) -> usize {
    let n = citation_counts.len();
    let mut buckets = vec![0usize; n + 1];
    for &c in citation_counts {
        buckets[(c as usize).min(n)] += 1;
    }
    let mut at_least = 0;
    for h in (1..=n).rev() {
        at_least += buckets[h];
        if at_least >= h {
            return h;
        }
    }
    0
}

/// The per-journal indicator row emitted by the CLI.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JournalIndicators {
    pub journal: String,
    pub impact_factor: Option<f64>,
    pub quasi_impact_factor: Option<f64>,
    pub h_index: usize,
    pub total_cited: u64,
    pub total_citing: u64,
    pub self_citations: u64,
}

/// Citations received by `journal` from each other journal, self excluded.
pub fn citing_journal_counts(matrix: &CitationMatrix, journal: usize) -> Vec<u64> {
    matrix
        .column(journal)
        .into_iter()
        .filter(|&(i, _)| i != journal)
        .map(|(_, c)| c)
        .collect()
}

/// Assembles the indicator row of one journal.
///
/// The h-index is taken over [`citing_journal_counts`]: the largest `h` such
/// that `h` other journals each cite this journal at least `h` times. The
/// impact factors are `None` when no citable-item data covers the window.
pub fn journal_indicators(
    matrix: &CitationMatrix,
    citable: Option<&CitableTable>,
    journal: usize,
    year: i32,
    window: u32,
) -> Result<JournalIndicators, CorpusError> {
    let Totals {
        total_cited,
        total_citing,
        self_citations,
    } = matrix.totals(journal)?;
    let impact = citable.and_then(|table| match impact_factor(table, journal, year, window) {
        Ok(report) => Some(report),
        Err(err) => {
            log::debug!("{}: {err}", matrix.registry().abbrev(journal));
            None
        }
    });
    Ok(JournalIndicators {
        journal: matrix.registry().abbrev(journal).to_string(),
        impact_factor: impact.as_ref().map(|r| r.impact_factor),
        quasi_impact_factor: impact.as_ref().map(|r| r.quasi_impact_factor),
        h_index: h_index(&citing_journal_counts(matrix, journal)),
        total_cited,
        total_citing,
        self_citations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::CitableRecord;
    use proptest::prelude::*;

    fn h_index_oracle(counts: &[u64]) -> usize {
        let mut sorted = counts.to_vec();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        sorted
            .iter()
            .enumerate()
            .take_while(|&(i, &c)| c >= (i + 1) as u64)
            .count()
    }

    fn record(year: i32, items: u64, age: u32, cites: u64, self_cites: u64) -> CitableRecord {
        CitableRecord {
            journal_id: 0,
            year,
            citable_items: items,
            cites_received_by_age: [(age, cites)].into(),
            self_cites_by_age: [(age, self_cites)].into(),
        }
    }

    fn table(records: Vec<CitableRecord>) -> CitableTable {
        let mut t = CitableTable::new();
        for r in records {
            t.insert(r);
        }
        t
    }

    #[test]
    fn impact_factor_hand_values() {
        let t = table(vec![record(2005, 10, 1, 6, 0), record(2004, 10, 2, 4, 0)]);
        let r = impact_factor(&t, 0, 2006, DEFAULT_WINDOW).unwrap();
        assert_eq!(r.impact_factor, 0.5);
        assert_eq!(r.quasi_impact_factor, 0.5);
        assert_eq!((r.numerator, r.denominator), (10, 20));

        let t = table(vec![record(2005, 10, 1, 6, 2), record(2004, 10, 2, 4, 2)]);
        let r = impact_factor(&t, 0, 2006, DEFAULT_WINDOW).unwrap();
        assert_eq!(r.impact_factor, 0.5);
        assert_eq!(r.quasi_impact_factor, 6.0 / 20.0);

        let t = table(vec![record(2005, 10, 1, 0, 0), record(2004, 7, 2, 0, 0)]);
        let r = impact_factor(&t, 0, 2006, DEFAULT_WINDOW).unwrap();
        assert_eq!((r.impact_factor, r.quasi_impact_factor), (0.0, 0.0));
    }

    #[test]
    fn impact_factor_errors() {
        let t = table(vec![record(2005, 0, 1, 0, 0), record(2004, 0, 2, 0, 0)]);
        assert!(matches!(
            impact_factor(&t, 0, 2006, 2),
            Err(IndicatorError::Undefined { .. })
        ));
        let t = table(vec![record(2005, 10, 1, 3, 0)]);
        assert_eq!(
            impact_factor(&t, 0, 2006, 2),
            Err(IndicatorError::MissingData { journal: 0, year: 2004 })
        );
        assert_eq!(impact_factor(&t, 0, 2006, 0), Err(IndicatorError::EmptyWindow));
    }

    #[test]
    fn wider_window_reaches_further_back() {
        let t = table(vec![
            record(2005, 10, 1, 6, 0),
            record(2004, 10, 2, 4, 0),
            record(2003, 20, 3, 5, 0),
        ]);
        let r = impact_factor(&t, 0, 2006, 3).unwrap();
        assert_eq!((r.numerator, r.denominator), (15, 40));
    }

    #[test]
    fn h_index_examples() {
        assert_eq!(h_index(&[10, 8, 5, 4, 3]), 4);
        assert_eq!(h_index(&[]), 0);
        assert_eq!(h_index(&[1, 1, 1, 1]), 1);
        assert_eq!(h_index(&[0, 0]), 0);
        assert_eq!(h_index(&[100]), 1);
    }

    proptest! {
        #[test]
        fn h_index_matches_sort_oracle(counts in prop::collection::vec(0u64..50, 0..60)) {
            prop_assert_eq!(h_index(&counts), h_index_oracle(&counts));
        }

        #[test]
        fn h_index_bounds_and_monotonicity(counts in prop::collection::vec(0u64..50, 0..40), extra in 0u64..50) {
            let h = h_index(&counts);
            prop_assert!(h <= counts.len());
            prop_assert!(h as u64 <= counts.iter().copied().max().unwrap_or(0));
            let mut longer = counts.clone();
            longer.push(extra);
            prop_assert!(h_index(&longer) >= h);
            let mut reversed = counts.clone();
            reversed.reverse();
            prop_assert_eq!(h_index(&reversed), h);
        }

        #[test]
        fn impact_factor_linear_and_quasi_bounded(
            c1 in 0u64..1000, c2 in 0u64..1000, s1 in 0u64..1000, s2 in 0u64..1000,
            i1 in 1u64..500, i2 in 0u64..500,
        ) {
            let (s1, s2) = (s1.min(c1), s2.min(c2));
            let t = table(vec![record(2005, i1, 1, c1, s1), record(2004, i2, 2, c2, s2)]);
            let r = impact_factor(&t, 0, 2006, 2).unwrap();
            prop_assert!(r.quasi_impact_factor <= r.impact_factor);
            let doubled = table(vec![record(2005, i1, 1, 2 * c1, 0), record(2004, i2, 2, 2 * c2, 0)]);
            let d = impact_factor(&doubled, 0, 2006, 2).unwrap();
            prop_assert_eq!(d.impact_factor, 2.0 * r.impact_factor);
            prop_assert_eq!(d.quasi_impact_factor, d.impact_factor);
        }
    }
}
