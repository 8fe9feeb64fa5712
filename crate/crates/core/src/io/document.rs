//! The JSON interchange format.
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "params": { "p": 2, "n": 2, "k": 2, "kind": "complex",
//!               "construction": "custom", "family": null },
//!   "column_scaling": [1, 1],
//!   "entries": [ { "row": 0, "col": 0, "sign": 1, "var": 0,
//!                  "conj": false, "scaled": false }, ... ],
//!   "provenance": { "map_family": null, "generator_version": "0.1.0" }
//! }
//! ```
//!
//! Entries are sorted by `(row, col)` and zero cells are omitted. Output is
//! pretty-printed with a trailing newline, so parsing and re-serializing a
//! document this crate wrote gives back the same bytes.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::design::{DesignMatrix, Entry, Kind, Lambda};
use crate::error::{Error, Result};
use crate::maps::Family;

pub const SCHEMA_VERSION: u32 = 1;
pub const GENERATOR_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Construction {
    Square,
    SquareRecursive,
    Rate1W,
    Rate1What,
    Rh,
    RhZeroFree,
    Tjc,
    Custom,
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("unit variant");
        f.write_str(s.as_str().expect("string tag"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    pub p: usize,
    pub n: usize,
    pub k: usize,
    pub kind: Kind,
    pub construction: Construction,
    pub family: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DocEntry {
    pub row: usize,
    pub col: usize,
    pub sign: i8,
    pub var: usize,
    pub conj: bool,
    pub scaled: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Provenance {
    pub map_family: Option<String>,
    pub generator_version: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DesignDocument {
    pub schema_version: u32,
    pub params: Params,
    pub column_scaling: Vec<u8>,
    pub entries: Vec<DocEntry>,
    pub provenance: Provenance,
}

fn schema(field: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Schema {
        field: field.into(),
        message: message.into(),
    }
}

impl DesignDocument {
    pub fn from_design(
        d: &DesignMatrix,
        construction: Construction,
        family: Option<Family>,
    ) -> DesignDocument {
        let mut entries = Vec::new();
        for r in 0..d.rows() {
            for c in 0..d.cols() {
                if let Some(l) = d.get(r, c).literal() {
                    entries.push(DocEntry {
                        row: r,
                        col: c,
                        sign: l.sign(),
                        var: l.var,
                        conj: l.conj,
                        scaled: l.is_scaled(),
                    });
                }
            }
        }
        let family = family.map(|f| f.tag().to_string());
        DesignDocument {
            schema_version: SCHEMA_VERSION,
            params: Params {
                p: d.rows(),
                n: d.cols(),
                k: d.num_vars(),
                kind: d.kind(),
                construction,
                family: family.clone(),
            },
            column_scaling: d.scaling().iter().map(|l| l.value()).collect(),
            entries,
            provenance: Provenance {
                map_family: family,
                generator_version: GENERATOR_VERSION.to_string(),
            },
        }
    }

    /// Rebuilds the design, checking the document against its own header
    /// and every design invariant.
    pub fn to_design(&self) -> Result<DesignMatrix> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(schema(
                "schema_version",
                format!("expected {SCHEMA_VERSION}, got {}", self.schema_version),
            ));
        }
        let Params { p, n, k, kind, .. } = self.params;
        if p == 0 || n == 0 {
            return Err(schema("params", format!("degenerate {p}x{n} design")));
        }
        if let Some(f) = &self.params.family {
            Family::from_str(f).map_err(|_| schema("params.family", format!("unknown {f:?}")))?;
        }
        if self.column_scaling.len() != n {
            return Err(schema(
                "column_scaling",
                format!("{} values for n = {n}", self.column_scaling.len()),
            ));
        }
        let scaling = self
            .column_scaling
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                Lambda::from_value(v)
                    .ok_or_else(|| schema(format!("column_scaling[{i}]"), format!("{v} is not 1 or 2")))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut cells = vec![Entry::Zero; p * n];
        let mut last: Option<(usize, usize)> = None;
        for (i, e) in self.entries.iter().enumerate() {
            let at = |f: &str| format!("entries[{i}].{f}");
            if e.row >= p {
                return Err(schema(at("row"), format!("{} ≥ p = {p}", e.row)));
            }
            if e.col >= n {
                return Err(schema(at("col"), format!("{} ≥ n = {n}", e.col)));
            }
            if e.sign != 1 && e.sign != -1 {
                return Err(schema(at("sign"), format!("{} is not ±1", e.sign)));
            }
            if last.is_some_and(|l| l >= (e.row, e.col)) {
                return Err(schema(at("row"), "entries must be strictly sorted by (row, col)"));
            }
            if e.scaled != (scaling[e.col] == Lambda::Two) {
                return Err(schema(
                    at("scaled"),
                    format!("disagrees with column_scaling[{}]", e.col),
                ));
            }
            last = Some((e.row, e.col));
            cells[e.row * n + e.col] = Entry::new(e.sign, e.var, e.conj, e.scaled);
        }
        DesignMatrix::new(p, n, k, kind, scaling, cells)
            .map_err(|err| schema("entries", err.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<DesignDocument> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn family(&self) -> Option<Family> {
        self.params.family.as_deref().and_then(|f| f.parse().ok())
    }
}
