//! Serialization: canonical JSON documents plus text, CSV and LaTeX views.

pub mod document;
pub mod render;

pub use document::{Construction, DesignDocument, DocEntry, Params, Provenance};
