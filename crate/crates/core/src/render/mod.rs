// SPDX-License-Identifier: Apache-2.0

//! Environment maps: layout, glyph geometry and export.
//!
//! A node is drawn as an ellipse. Its vertical radius grows with the natural
//! log of `1 + citations received inside the environment`; its horizontal
//! radius uses the same count minus within-journal self-citations. A round
//! node therefore has few self-citations. Edge widths grow linearly with the
//! similarity weight above the graph's threshold.

mod export;
mod glyph;
mod layout;

pub use export::{export, render_string, ExportFormat, RenderError};
pub use glyph::{glyphs, edge_width, Glyph, GlyphConfig, LayoutInfo, RenderedEdge, RenderedMap};
pub use layout::{layout, LayoutConfig, LAYOUT_ALGORITHM, LAYOUT_VERSION};
