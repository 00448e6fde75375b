// SPDX-License-Identifier: Apache-2.0

use citefield::render::{render_string, ExportFormat, Glyph, LayoutInfo, RenderedEdge, RenderedMap};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Minimal reader for the `*Vertices` / `*Edges` subset of the Pajek format.
fn read_pajek(text: &str) -> (usize, Vec<(usize, usize, f64)>) {
    let mut declared = None;
    let mut vertices = 0;
    let mut edges = Vec::new();
    let mut section = "";
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('*') {
            let mut words = rest.split_whitespace();
            section = match words.next().map(str::to_ascii_lowercase).as_deref() {
                Some("vertices") => {
                    declared = words.next().map(|n| n.parse::<usize>().unwrap());
                    "v"
                }
                Some("edges") => "e",
                other => panic!("unexpected section {other:?}"),
            };
            continue;
        }
        match section {
            "v" => vertices += 1,
            "e" => {
                let f: Vec<&str> = line.split_whitespace().collect();
                edges.push((f[0].parse().unwrap(), f[1].parse().unwrap(), f[2].parse().unwrap()));
            }
            _ => panic!("data outside a section"),
        }
    }
    assert_eq!(declared, Some(vertices));
    (vertices, edges)
}

#[test]
fn export_then_reimport() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..50 {
        let n = rng.gen_range(0..30);
        let glyphs: Vec<Glyph> = (0..n)
            .map(|k| Glyph {
                journal_id: k,
                abbrev: format!("J \"{k}\""),
                label: format!("J{k}"),
                center: (rng.gen(), rng.gen()),
                radius_x: 3.0,
                radius_y: 4.0,
                total_cited: 1,
                self_citations: 0,
            })
            .collect();
        let mut edges = Vec::new();
        for a in 0..n {
            for b in (a + 1)..n {
                if rng.gen_bool(0.2) {
                    edges.push(RenderedEdge {
                        source: a,
                        target: b,
                        weight: rng.gen_range(0.2..1.0),
                        width: 1.0,
                    });
                }
            }
        }
        let map = RenderedMap {
            glyphs,
            edges,
            width: 100.0,
            height: 100.0,
            threshold: 0.2,
            layout: LayoutInfo {
                algorithm: "test".into(),
                version: 1,
                iterations: 0,
                seed: 0,
            },
        };
        let (vertices, back) = read_pajek(&render_string(&map, ExportFormat::Pajek).unwrap());
        assert_eq!(vertices, n);
        assert_eq!(back.len(), map.edges.len());
        for (e, (a, b, w)) in map.edges.iter().zip(back) {
            assert_eq!((a, b), (e.source + 1, e.target + 1));
            assert!((w - e.weight).abs() <= 5e-7);
        }
    }
}
