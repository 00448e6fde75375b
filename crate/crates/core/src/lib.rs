// SPDX-License-Identifier: Apache-2.0

//! Journal citation-network analysis.
//!
//! The pipeline runs in stages, each usable on its own:
//!
//! 1. [`corpus`]: journal registries and aggregated journal-to-journal
//!    citation matrices for one data year.
//! 2. [`indicators`]: impact factor, quasi impact factor and h-index.
//! 3. [`environment`]: seed-anchored local citation environments.
//! 4. [`similarity`]: cosine (or Pearson) normalized similarity graphs.
//! 5. [`centrality`]: degree, closeness, betweenness and eigenvector centrality.
//! 6. [`render`]: deterministic layout, glyphs and SVG/DOT/Pajek/JSON export.
//!
//! The all-pairs similarity, betweenness and layout kernels run on rayon when
//! the `parallel` feature is enabled (the default). Every kernel produces
//! bit-identical output in either [`Execution`] mode.

pub mod centrality;
pub mod corpus;
pub mod environment;
mod exec;
pub mod indicators;
pub mod render;
pub mod report;
pub mod similarity;

pub use exec::Execution;
