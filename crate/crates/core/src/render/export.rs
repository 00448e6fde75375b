// SPDX-License-Identifier: Apache-2.0

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use thiserror::Error;

use super::glyph::RenderedMap;

#[derive(Debug, Error)]
pub enum RenderError {
    #[error("unknown export format {0:?}, expected svg, dot, pajek or json")]
    UnknownFormat(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExportFormat {
    Svg,
    Dot,
    Pajek,
    Json,
}

impl ExportFormat {
    pub const ALL: [ExportFormat; 4] = [ExportFormat::Json, ExportFormat::Pajek, ExportFormat::Dot, ExportFormat::Svg];

    pub fn extension(self) -> &'static str {
        match self {
            ExportFormat::Svg => "svg",
            ExportFormat::Dot => "dot",
            ExportFormat::Pajek => "net",
            ExportFormat::Json => "json",
        }
    }
}

impl FromStr for ExportFormat {
    type Err = RenderError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "svg" => Ok(ExportFormat::Svg),
            "dot" | "gv" => Ok(ExportFormat::Dot),
            "pajek" | "net" => Ok(ExportFormat::Pajek),
            "json" => Ok(ExportFormat::Json),
            other => Err(RenderError::UnknownFormat(other.to_string())),
        }
    }
}

fn xml_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

fn quoted(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

fn layout_comment(map: &RenderedMap) -> String {
    format!(
        "citefield {} layout={}/v{} iterations={} seed={}",
        env!("CARGO_PKG_VERSION"),
        map.layout.algorithm,
        map.layout.version,
        map.layout.iterations,
        map.layout.seed
    )
}

fn svg(map: &RenderedMap) -> String {
    let (w, h) = (map.width, map.height);
    let px = |(x, y): (f64, f64)| (x * w, y * h);
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w:.0}\" height=\"{h:.0}\" viewBox=\"0 0 {w:.0} {h:.0}\">"
    );
    let _ = writeln!(out, "<!-- {} -->", layout_comment(map));
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    out.push_str("<g stroke=\"#7f7f7f\" stroke-linecap=\"round\">\n");
    for e in &map.edges {
        let (x1, y1) = px(map.glyphs[e.source].center);
        let (x2, y2) = px(map.glyphs[e.target].center);
        let _ = writeln!(
            out,
            "<line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" stroke-width=\"{:.3}\"/>",
            e.width
        );
    }
    out.push_str("</g>\n<g fill=\"#dbe4f0\" stroke=\"#2f4368\" stroke-width=\"1\">\n");
    for g in &map.glyphs {
        let (cx, cy) = px(g.center);
        let _ = writeln!(
            out,
            "<ellipse cx=\"{cx:.2}\" cy=\"{cy:.2}\" rx=\"{:.3}\" ry=\"{:.3}\"/>",
            g.radius_x, g.radius_y
        );
    }
    out.push_str("</g>\n<g font-family=\"Helvetica, Arial, sans-serif\" font-size=\"11\" text-anchor=\"middle\" fill=\"#111111\">\n");
    for g in &map.glyphs {
        let (cx, cy) = px(g.center);
        let _ = writeln!(
            out,
            "<text x=\"{cx:.2}\" y=\"{:.2}\">{}</text>",
            cy + g.radius_y + 11.0,
            xml_escape(&g.label)
        );
    }
    out.push_str("</g>\n</svg>\n");
    out
}

fn dot(map: &RenderedMap) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "// {}", layout_comment(map));
    out.push_str("graph citefield {\n");
    out.push_str("  graph [layout=neato, overlap=true, splines=false];\n");
    out.push_str("  node [shape=ellipse, fixedsize=true];\n");
    for (k, g) in map.glyphs.iter().enumerate() {
        let (x, y) = g.center;
        // points, y axis upwards
        let _ = writeln!(
            out,
            "  n{k} [label={}, pos=\"{:.2},{:.2}!\", width={:.4}, height={:.4}];",
            quoted(&g.label),
            x * map.width,
            (1.0 - y) * map.height,
            2.0 * g.radius_x / 72.0,
            2.0 * g.radius_y / 72.0
        );
    }
    for e in &map.edges {
        let _ = writeln!(
            out,
            "  n{} -- n{} [weight={:.6}, penwidth={:.3}];",
            e.source, e.target, e.weight, e.width
        );
    }
    out.push_str("}\n");
    out
}

fn pajek(map: &RenderedMap) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "*Vertices {}", map.glyphs.len());
    for (k, g) in map.glyphs.iter().enumerate() {
        let label = g.abbrev.replace('"', "'");
        let _ = writeln!(out, "{} \"{}\" {:.6} {:.6}", k + 1, label, g.center.0, g.center.1);
    }
    out.push_str("*Edges\n");
    for e in &map.edges {
        let _ = writeln!(out, "{} {} {:.6}", e.source + 1, e.target + 1, e.weight);
    }
    out
}

/// The map serialized in `format`.
pub fn render_string(map: &RenderedMap, format: ExportFormat) -> Result<String, RenderError> {
    Ok(match format {
        ExportFormat::Svg => svg(map),
        ExportFormat::Dot => dot(map),
        ExportFormat::Pajek => pajek(map),
        ExportFormat::Json => {
            let mut s = serde_json::to_string_pretty(map)?;
            s.push('\n');
            s
        }
    })
}

pub fn export(map: &RenderedMap, format: ExportFormat, path: impl AsRef<Path>) -> Result<(), RenderError> {
    let path = path.as_ref();
    let text = render_string(map, format)?;
    std::fs::write(path, text).map_err(|source| RenderError::Io {
        path: path.to_path_buf(),
        source,
    })
}
