//! Design matrices over `{0, ±x_i, ±x_i*, ±x_i/√2, ±x_i*/√2}`.
//!
//! Cells print as compact tokens: `0`, `x3`, `-x3*`, `x7*/√2`. The same
//! grammar is accepted by [`DesignMatrix::parse_tokens`], which is how the
//! test fixtures are written.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::coeff::Coefficient;
use crate::error::{Error, Result};

pub const SCALED_SUFFIX: &str = "/√2";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Real,
    Complex,
}

/// Column scaling: λ = 1 (plain) or λ = 2 (entries carry 1/√2 and every
/// variable in the column shows up twice).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Lambda {
    One,
    Two,
}

impl Lambda {
    pub fn value(self) -> u8 {
        match self {
            Lambda::One => 1,
            Lambda::Two => 2,
        }
    }

    pub fn from_value(v: u8) -> Option<Lambda> {
        match v {
            1 => Some(Lambda::One),
            2 => Some(Lambda::Two),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub coeff: Coefficient,
    pub var: usize,
    pub conj: bool,
}

impl Literal {
    /// ±1 from the sign of the coefficient. Only meaningful for entry values,
    /// where exactly one of `a`, `b` is nonzero.
    pub fn sign(&self) -> i8 {
        if self.coeff.a() < 0 || self.coeff.b() < 0 {
            -1
        } else {
            1
        }
    }

    pub fn is_scaled(&self) -> bool {
        self.coeff.scaled_unit_sign().is_some()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Entry {
    #[default]
    Zero,
    Lit(Literal),
}

impl Entry {
    /// `sign · x_var`, real and unscaled.
    pub fn var(sign: i8, var: usize) -> Entry {
        Entry::new(sign, var, false, false)
    }

    pub fn new(sign: i8, var: usize, conj: bool, scaled: bool) -> Entry {
        let unit = if scaled {
            Coefficient::inv_sqrt2()
        } else {
            Coefficient::ONE
        };
        let coeff = if sign < 0 { -unit } else { unit };
        Entry::Lit(Literal { coeff, var, conj })
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Entry::Zero)
    }

    pub fn literal(&self) -> Option<&Literal> {
        match self {
            Entry::Zero => None,
            Entry::Lit(l) => Some(l),
        }
    }

    pub fn negate(self) -> Entry {
        match self {
            Entry::Zero => Entry::Zero,
            Entry::Lit(l) => Entry::Lit(Literal {
                coeff: -l.coeff,
                ..l
            }),
        }
    }

    /// Multiplies the sign by `s` (±1).
    pub fn signed(self, s: i8) -> Entry {
        if s < 0 {
            self.negate()
        } else {
            self
        }
    }

    pub fn conjugate(self) -> Entry {
        match self {
            Entry::Zero => Entry::Zero,
            Entry::Lit(l) => Entry::Lit(Literal {
                conj: !l.conj,
                ..l
            }),
        }
    }

    pub fn scaled(self) -> Entry {
        match self {
            Entry::Zero => Entry::Zero,
            Entry::Lit(l) => Entry::Lit(Literal {
                coeff: l.coeff * Coefficient::inv_sqrt2(),
                ..l
            }),
        }
    }

    pub fn with_var(self, var: usize) -> Entry {
        match self {
            Entry::Zero => Entry::Zero,
            Entry::Lit(l) => Entry::Lit(Literal { var, ..l }),
        }
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Zero => write!(f, "0"),
            Entry::Lit(l) => {
                if l.coeff.is_entry_value() {
                    write!(
                        f,
                        "{}x{}{}{}",
                        if l.sign() < 0 { "-" } else { "" },
                        l.var,
                        if l.conj { "*" } else { "" },
                        if l.is_scaled() { SCALED_SUFFIX } else { "" }
                    )
                } else {
                    write!(f, "{}·x{}{}", l.coeff, l.var, if l.conj { "*" } else { "" })
                }
            }
        }
    }
}

impl FromStr for Entry {
    type Err = Error;

    fn from_str(s: &str) -> Result<Entry> {
        let bad = || Error::InvalidDesign(format!("bad cell token {s:?}"));
        if s == "0" {
            return Ok(Entry::Zero);
        }
        let (neg, rest) = match s.strip_prefix('-') {
            Some(r) => (true, r),
            None => (false, s),
        };
        let (scaled, rest) = match rest.strip_suffix(SCALED_SUFFIX) {
            Some(r) => (true, r),
            None => (false, rest),
        };
        let (conj, rest) = match rest.strip_suffix('*') {
            Some(r) => (true, r),
            None => (false, rest),
        };
        let digits = rest.strip_prefix('x').ok_or_else(bad)?;
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let var = digits.parse().map_err(|_| bad())?;
        Ok(Entry::new(if neg { -1 } else { 1 }, var, conj, scaled))
    }
}

/// A `p × n` design in `k` variables. Construction checks every structural
/// invariant, so any value of this type is well formed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DesignMatrix {
    rows: usize,
    cols: usize,
    num_vars: usize,
    kind: Kind,
    scaling: Vec<Lambda>,
    cells: Vec<Entry>,
}

impl DesignMatrix {
    pub fn new(
        rows: usize,
        cols: usize,
        num_vars: usize,
        kind: Kind,
        scaling: Vec<Lambda>,
        cells: Vec<Entry>,
    ) -> Result<DesignMatrix> {
        let d = DesignMatrix {
            rows,
            cols,
            num_vars,
            kind,
            scaling,
            cells,
        };
        d.validate()?;
        Ok(d)
    }

    /// Builds from row vectors. `k` is one past the largest variable index
    /// and each column is λ = 2 exactly when its entries are scaled.
    pub fn from_rows(kind: Kind, rows: Vec<Vec<Entry>>) -> Result<DesignMatrix> {
        let k = rows
            .iter()
            .flatten()
            .filter_map(|e| e.literal().map(|l| l.var + 1))
            .max()
            .unwrap_or(0);
        DesignMatrix::from_rows_with_vars(kind, k, rows)
    }

    pub fn from_rows_with_vars(
        kind: Kind,
        num_vars: usize,
        rows: Vec<Vec<Entry>>,
    ) -> Result<DesignMatrix> {
        let p = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidDesign("ragged rows".into()));
        }
        let scaling = (0..n)
            .map(|c| {
                let scaled = rows
                    .iter()
                    .filter_map(|r| r[c].literal())
                    .any(Literal::is_scaled);
                if scaled {
                    Lambda::Two
                } else {
                    Lambda::One
                }
            })
            .collect();
        let cells = rows.into_iter().flatten().collect();
        DesignMatrix::new(p, n, num_vars, kind, scaling, cells)
    }

    /// Parses whitespace-separated cell tokens, one matrix row per line.
    /// The design is complex when any token is conjugated or scaled.
    pub fn parse_tokens(text: &str) -> Result<DesignMatrix> {
        let rows = parse_token_rows(text)?;
        let complex = rows
            .iter()
            .flatten()
            .filter_map(Entry::literal)
            .any(|l| l.conj || l.is_scaled());
        let kind = if complex { Kind::Complex } else { Kind::Real };
        DesignMatrix::from_rows(kind, rows)
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidDesign(msg));
        if self.rows == 0 || self.cols == 0 {
            return bad(format!("degenerate {}x{} matrix", self.rows, self.cols));
        }
        if self.cells.len() != self.rows * self.cols {
            return bad(format!(
                "{} cells for a {}x{} matrix",
                self.cells.len(),
                self.rows,
                self.cols
            ));
        }
        if self.scaling.len() != self.cols {
            return bad(format!(
                "{} column scalings for {} columns",
                self.scaling.len(),
                self.cols
            ));
        }
        for c in 0..self.cols {
            let lambda = self.scaling[c];
            let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
            for (r, l) in self.column(c) {
                if l.var >= self.num_vars {
                    return bad(format!(
                        "cell ({r}, {c}) uses x{} but k = {}",
                        l.var, self.num_vars
                    ));
                }
                if l.conj && self.kind == Kind::Real {
                    return bad(format!("cell ({r}, {c}) is conjugated in a real design"));
                }
                let want_scaled = lambda == Lambda::Two;
                let ok = if want_scaled {
                    l.coeff.scaled_unit_sign().is_some()
                } else {
                    l.coeff.unit_sign().is_some()
                };
                if !ok {
                    return bad(format!(
                        "cell ({r}, {c}) has coefficient {} in a λ={} column",
                        l.coeff,
                        lambda.value()
                    ));
                }
                *seen.entry(l.var).or_default() += 1;
            }
            for (&v, &count) in &seen {
                let ok = match lambda {
                    Lambda::One => count == 1,
                    Lambda::Two => count == 2,
                };
                if !ok {
                    return bad(format!(
                        "x{v} appears {count} times in column {c} with λ={}",
                        lambda.value()
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn scaling(&self) -> &[Lambda] {
        &self.scaling
    }

    pub fn get(&self, r: usize, c: usize) -> &Entry {
        &self.cells[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Entry] {
        &self.cells[r * self.cols..(r + 1) * self.cols]
    }

    /// Nonzero cells of column `c`, top to bottom.
    pub fn column(&self, c: usize) -> impl Iterator<Item = (usize, &Literal)> + '_ {
        (0..self.rows).filter_map(move |r| self.get(r, c).literal().map(|l| (r, l)))
    }

    pub fn cells(&self) -> &[Entry] {
        &self.cells
    }

    pub fn to_rows(&self) -> Vec<Vec<Entry>> {
        self.cells.chunks(self.cols).map(<[Entry]>::to_vec).collect()
    }

    pub fn zero_count(&self) -> usize {
        self.cells.iter().filter(|e| e.is_zero()).count()
    }

    /// Same shape and parameters with one cell replaced; revalidated.
    pub fn with_cell(&self, r: usize, c: usize, e: Entry) -> Result<DesignMatrix> {
        let mut cells = self.cells.clone();
        cells[r * self.cols + c] = e;
        DesignMatrix::new(
            self.rows,
            self.cols,
            self.num_vars,
            self.kind,
            self.scaling.clone(),
            cells,
        )
    }

    /// Renumbers the variables that occur to `0..k` in increasing order.
    pub fn with_dense_vars(&self) -> DesignMatrix {
        let used: std::collections::BTreeSet<usize> = self
            .cells
            .iter()
            .filter_map(|e| e.literal().map(|l| l.var))
            .collect();
        let index: BTreeMap<usize, usize> =
            used.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let cells = self
            .cells
            .iter()
            .map(|e| match e.literal() {
                Some(l) => e.with_var(index[&l.var]),
                None => *e,
            })
            .collect();
        DesignMatrix {
            num_vars: used.len(),
            cells,
            ..self.clone()
        }
    }

    /// Token rows, the inverse of [`DesignMatrix::parse_tokens`].
    pub fn to_tokens(&self) -> String {
        let mut s = String::new();
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(Entry::to_string).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }
}

/// Whitespace-separated token rows; blank lines and `#` comments skipped.
/// No design invariants are checked.
pub fn parse_token_rows(text: &str) -> Result<Vec<Vec<Entry>>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.split_whitespace().map(str::parse).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn token_roundtrip() {
        for t in ["0", "x0", "-x12", "x3*", "-x7*/√2", "x4/√2"] {
            let e: Entry = t.parse().unwrap();
            assert_eq!(e.to_string(), t);
        }
        for t in ["", "y0", "x", "-", "x1**", "x-1", "1"] {
            assert!(t.parse::<Entry>().is_err(), "{t}");
        }
    }

    #[test]
    fn rejects_degenerate() {
        assert!(DesignMatrix::from_rows(Kind::Real, vec![]).is_err());
        assert!(DesignMatrix::from_rows(Kind::Real, vec![vec![]]).is_err());
    }

    #[test]
    fn rejects_repeated_variable_in_plain_column() {
        let e = DesignMatrix::parse_tokens("x0 x1\nx0 x1");
        assert!(matches!(e, Err(Error::InvalidDesign(_))));
    }

    #[test]
    fn scaled_column_needs_each_variable_twice() {
        assert!(DesignMatrix::parse_tokens("x0/√2\nx0*/√2").is_ok());
        assert!(DesignMatrix::parse_tokens("x0/√2\nx1*/√2").is_err());
    }

    #[test]
    fn mixed_scaling_in_column_rejected() {
        assert!(DesignMatrix::parse_tokens("x0/√2\nx0*/√2\nx1").is_err());
    }

    #[test]
    fn real_design_cannot_conjugate() {
        let rows = vec![vec![Entry::new(1, 0, true, false)]];
        assert!(DesignMatrix::from_rows(Kind::Real, rows).is_err());
    }

    #[test]
    fn variable_bound_checked() {
        let rows = vec![vec![Entry::var(1, 3)]];
        assert!(DesignMatrix::from_rows_with_vars(Kind::Real, 2, rows).is_err());
    }
}
