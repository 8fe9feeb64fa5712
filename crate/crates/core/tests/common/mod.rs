#![allow(dead_code)]

use std::path::PathBuf;

use odesign::square::CellDiff;
use odesign::{compare_grids, parse_token_rows, DesignMatrix, Entry};

pub fn fixture_dir(sub: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(sub)
}

/// A printed matrix as raw tokens; it need not be a valid design.
pub fn printed(name: &str) -> Vec<Vec<Entry>> {
    let path = fixture_dir("tests/fixtures/reference").join(format!("{name}.txt"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    parse_token_rows(&text).expect("fixture tokens parse")
}

pub fn diff(built: &DesignMatrix, name: &str) -> Vec<CellDiff> {
    compare_grids(&built.to_rows(), &printed(name))
        .expect("shapes agree")
        .diffs()
        .to_vec()
}

pub fn tok(s: &str) -> Entry {
    s.parse().expect("token")
}

/// `(row, col, constructed, printed)` as tokens.
pub fn cells(diffs: &[CellDiff]) -> Vec<(usize, usize, String, String)> {
    diffs
        .iter()
        .map(|d| (d.row, d.col, d.left.to_string(), d.right.to_string()))
        .collect()
}

pub const RH9_TYPOS: [(usize, usize, &str, &str); 1] = [(12, 6, "x6*", "-x7*")];

pub const RH10_TYPOS: [(usize, usize, &str, &str); 5] = [
    (20, 6, "x6*", "-x7*"),
    (21, 7, "x6*", "x6"),
    (21, 9, "x9/√2", "x10/√2"),
    (28, 6, "x14*", "-x15*"),
    (29, 7, "x14*", "x14"),
];

pub fn owned(list: &[(usize, usize, &str, &str)]) -> Vec<(usize, usize, String, String)> {
    list.iter()
        .map(|&(r, c, a, b)| (r, c, a.to_string(), b.to_string()))
        .collect()
}

/// The printed companion differs from the constructed one by negating
/// whole columns.
pub const W9_HAT_NEGATED_COLUMNS: [usize; 3] = [3, 5, 6];
