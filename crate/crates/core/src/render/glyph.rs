// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use super::layout::{LayoutConfig, LAYOUT_ALGORITHM, LAYOUT_VERSION};
use crate::environment::LocalEnvironment;
use crate::similarity::SimilarityGraph;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GlyphConfig {
    /// Canvas size in pixels.
    pub width: f64,
    pub height: f64,
    /// Vertical radius of the most-cited member, in pixels.
    pub max_radius: f64,
    /// Radius used for a zero count, and the floor for all radii.
    pub min_radius: f64,
    pub min_edge_width: f64,
    pub max_edge_width: f64,
    /// Append the betweenness percentage to labels, e.g. `CJE (27)`.
    pub annotate_betweenness: bool,
}

impl Default for GlyphConfig {
    fn default() -> Self {
        Self {
            width: 1000.0,
            height: 800.0,
            max_radius: 36.0,
            min_radius: 3.0,
            min_edge_width: 0.5,
            max_edge_width: 6.0,
            annotate_betweenness: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Glyph {
    pub journal_id: usize,
    pub abbrev: String,
    /// Display label, with the bracketed annotation when enabled.
    pub label: String,
    /// Layout position in the unit square.
    pub center: (f64, f64),
    pub radius_x: f64,
    pub radius_y: f64,
    pub total_cited: u64,
    pub self_citations: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RenderedEdge {
    pub source: usize,
    pub target: usize,
    pub weight: f64,
    pub width: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayoutInfo {
    pub algorithm: String,
    pub version: u32,
    pub iterations: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RenderedMap {
    pub glyphs: Vec<Glyph>,
    pub edges: Vec<RenderedEdge>,
    pub width: f64,
    pub height: f64,
    pub threshold: f64,
    pub layout: LayoutInfo,
}

/// `min + (max - min) * (weight - threshold) / (1 - threshold)`, clamped to
/// `[min, max]`.
pub fn edge_width(weight: f64, threshold: f64, config: &GlyphConfig) -> f64 {
    let (lo, hi) = (config.min_edge_width, config.max_edge_width);
    if threshold >= 1.0 {
        return hi;
    }
    (lo + (hi - lo) * (weight - threshold) / (1.0 - threshold)).clamp(lo, hi)
}

/// Glyph geometry for every member of `g`.
///
/// `coords` are indexed like `g.members`, and every graph member must belong
/// to `env`. `betweenness` holds fractions, also indexed like `g.members`.
pub fn glyphs(
    env: &LocalEnvironment,
    g: &SimilarityGraph,
    coords: &[(f64, f64)],
    betweenness: Option<&[f64]>,
    seed: u64,
    layout: &LayoutConfig,
    config: &GlyphConfig,
) -> RenderedMap {
    assert_eq!(coords.len(), g.n(), "one coordinate per member");
    let cited = env.submatrix.cited_totals();
    let counts: Vec<(u64, u64)> = g
        .members
        .iter()
        .map(|&id| {
            let p = env
                .position(id)
                .unwrap_or_else(|| panic!("journal {id} is not an environment member"));
            (cited[p], env.submatrix.get(p, p))
        })
        .collect();

    let largest = counts
        .iter()
        .map(|&(total, _)| (1.0 + total as f64).ln())
        .fold(0.0, f64::max);
    let scale = if largest > 0.0 { config.max_radius / largest } else { 0.0 };
    let radius = |count: u64| {
        if count == 0 {
            config.min_radius
        } else {
            (scale * (1.0 + count as f64).ln()).max(config.min_radius)
        }
    };

    let glyphs = counts
        .iter()
        .enumerate()
        .map(|(k, &(total, self_citations))| {
            let abbrev = g.labels[k].clone();
            let label = match betweenness {
                Some(b) if config.annotate_betweenness => format!("{abbrev} ({:.0})", b[k] * 100.0),
                _ => abbrev.clone(),
            };
            Glyph {
                journal_id: g.members[k],
                abbrev,
                label,
                center: coords[k],
                radius_x: radius(total - self_citations),
                radius_y: radius(total),
                total_cited: total,
                self_citations,
            }
        })
        .collect();

    let edges = g
        .edges
        .iter()
        .map(|e| RenderedEdge {
            source: e.source,
            target: e.target,
            weight: e.weight,
            width: edge_width(e.weight, g.threshold_applied, config),
        })
        .collect();

    RenderedMap {
        glyphs,
        edges,
        width: config.width,
        height: config.height,
        threshold: g.threshold_applied,
        layout: LayoutInfo {
            algorithm: LAYOUT_ALGORITHM.to_string(),
            version: LAYOUT_VERSION,
            iterations: layout.iterations,
            seed,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::CitationMatrix;
    use crate::environment::{extract, EnvironmentSpec, Mode};
    use crate::similarity::{build_graph, Measure, ProfileSet};
    use crate::Execution;

    /// Seed S is cited 100 times in total, 20 of them by itself; A cites S 80
    /// times and itself 50 times; B only cites itself.
    fn map(config: &GlyphConfig) -> RenderedMap {
        let m = CitationMatrix::from_dense(
            2006,
            &["S", "A", "B"],
            &[vec![20, 0, 0], vec![80, 50, 0], vec![0, 0, 0]],
        )
        .unwrap();
        let env = extract(&m, &EnvironmentSpec::new([0], Mode::Cited)).unwrap();
        let g = build_graph(&ProfileSet::from_environment(&env, false), 0.2, Measure::Cosine, Execution::Sequential)
            .unwrap();
        let coords = vec![(0.5, 0.5); g.n()];
        glyphs(&env, &g, &coords, Some(&[0.25, 0.0]), 1, &LayoutConfig::default(), config)
    }

    #[test]
    fn radius_ratio_follows_self_citations() {
        let config = GlyphConfig::default();
        let map = map(&config);
        let s = &map.glyphs[0];
        assert_eq!((s.total_cited, s.self_citations), (100, 20));
        assert_eq!(s.radius_y, config.max_radius);
        let expected = 81f64.ln() / 101f64.ln();
        assert!((s.radius_x / s.radius_y - expected).abs() < 1e-12);
        assert!((expected - 0.9521).abs() < 1e-4);
        // A receives nothing but self-citations
        let a = &map.glyphs[1];
        assert_eq!((a.total_cited, a.self_citations), (50, 50));
        assert_eq!(a.radius_x, config.min_radius);
        assert!(a.radius_y > a.radius_x);
    }

    #[test]
    fn annotations_in_brackets() {
        let plain = map(&GlyphConfig::default());
        assert_eq!(plain.glyphs[0].label, "S");
        let annotated = map(&GlyphConfig {
            annotate_betweenness: true,
            ..GlyphConfig::default()
        });
        assert_eq!(annotated.glyphs[0].label, "S (25)");
    }

    #[test]
    fn edge_width_mapping() {
        let c = GlyphConfig::default();
        assert_eq!(edge_width(0.2, 0.2, &c), c.min_edge_width);
        assert_eq!(edge_width(1.0, 0.2, &c), c.max_edge_width);
        assert!(edge_width(0.5, 0.2, &c) < edge_width(0.6, 0.2, &c));
        assert_eq!(edge_width(1.0, 1.0, &c), c.max_edge_width);
    }
}
