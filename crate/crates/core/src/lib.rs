//! Word-level echoing analysis for (original post, persuasive comment,
//! explanation) conversation triples.
//!
//! The crate is organised as a pipeline:
//!
//! * [`corpus`] ingests submission/comment dumps, reconstructs triples and
//!   splits them by time.
//! * [`textprep`] normalizes raw text, tokenizes, stems and tags it.
//! * [`features`] turns an annotated triple into one 66-dimensional
//!   [`features::FeatureVector`] per candidate stem, labelled by whether the
//!   stem is echoed in the explanation.
//! * [`learn`] trains class-weighted logistic regression and gradient-boosted
//!   trees over those rows.
//! * [`eval`] computes F1 breakdowns, ablations, descriptive statistics,
//!   document-frequency decile curves and significance tables.
//! * [`pipeline`] wires the stages together through plain files.

pub mod annotate;
pub mod corpus;
pub mod error;
pub mod eval;
pub mod features;
pub mod io;
pub mod learn;
pub mod pipeline;
pub mod synth;
pub mod textprep;

pub use error::{Error, Result};
