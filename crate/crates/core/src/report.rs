// SPDX-License-Identifier: Apache-2.0

//! Per-journal summary table: betweenness and closeness percentages next to
//! the impact factor.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::centrality::CentralityReport;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub journal: String,
    pub title: String,
    pub betweenness_pct: f64,
    pub closeness_pct: f64,
    pub impact_factor: Option<f64>,
}

/// One row per requested journal, in the order given.
///
/// Journals absent from the centrality report (or measures that were not
/// computed) yield 0.
pub fn table_rows<'a>(
    journals: impl IntoIterator<Item = (&'a str, &'a str, Option<f64>)>,
    centrality: &CentralityReport,
) -> Vec<TableRow> {
    journals
        .into_iter()
        .map(|(abbrev, title, impact_factor)| {
            let member = centrality.get(abbrev);
            let pct = |v: Option<f64>| v.unwrap_or(0.0) * 100.0;
            TableRow {
                journal: abbrev.to_string(),
                title: title.to_string(),
                betweenness_pct: pct(member.and_then(|m| m.betweenness)),
                closeness_pct: pct(member.and_then(|m| m.closeness)),
                impact_factor,
            }
        })
        .collect()
}

/// Aligned plain-text table with whole-number percentages.
pub fn format_table(rows: &[TableRow]) -> String {
    let title_width = rows
        .iter()
        .map(|r| r.title.chars().count())
        .chain(["Journal".len()])
        .max()
        .unwrap_or(0);
    let abbrev_width = rows
        .iter()
        .map(|r| r.journal.chars().count())
        .chain(["Abbrev".len()])
        .max()
        .unwrap_or(0);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<title_width$}  {:<abbrev_width$}  {:>15}  {:>13}  {:>13}",
        "Journal", "Abbrev", "Betweenness (%)", "Closeness (%)", "Impact Factor"
    );
    for r in rows {
        let impact = r
            .impact_factor
            .map(|v| format!("{v:.3}"))
            .unwrap_or_else(|| "n/a".into());
        let _ = writeln!(
            out,
            "{:<title_width$}  {:<abbrev_width$}  {:>15.0}  {:>13.0}  {:>13}",
            r.title, r.journal, r.betweenness_pct, r.closeness_pct, impact
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centrality::{MemberCentrality, PathMetric};

    fn report() -> CentralityReport {
        let member = |journal: &str, b: f64, c: f64| MemberCentrality {
            journal: journal.into(),
            journal_id: 0,
            in_degree: None,
            out_degree: None,
            degree: None,
            closeness: Some(c),
            betweenness: Some(b),
            eigenvector: None,
        };
        CentralityReport {
            members: vec![member("CJE", 0.27, 0.63), member("S&S", 0.0, 0.0)],
            paths: PathMetric::Unweighted,
            eigenvalue: None,
            warnings: Vec::new(),
        }
    }

    #[test]
    fn rows_follow_request_order() {
        let rows = table_rows(
            [
                ("S&S", "Science & Society", Some(0.364)),
                ("cje", "Cambridge Journal of Economics", Some(0.571)),
            ],
            &report(),
        );
        assert_eq!(rows[0].journal, "S&S");
        assert_eq!((rows[0].betweenness_pct, rows[0].closeness_pct), (0.0, 0.0));
        assert!((rows[1].betweenness_pct - 27.0).abs() < 1e-12);
    }

    #[test]
    fn table_column_order() {
        let rows = table_rows([("CJE", "Cambridge Journal of Economics", Some(0.571))], &report());
        let text = format_table(&rows);
        let header = text.lines().next().unwrap();
        let b = header.find("Betweenness").unwrap();
        let c = header.find("Closeness").unwrap();
        let i = header.find("Impact Factor").unwrap();
        assert!(b < c && c < i);
        let line = text.lines().nth(1).unwrap();
        assert!(line.starts_with("Cambridge Journal of Economics  CJE"));
        assert!(line.ends_with("27             63          0.571"));
    }
}
