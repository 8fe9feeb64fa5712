//! Symbolic evaluation of `G^H G` and the orthogonality check.

use std::collections::BTreeMap;
use std::fmt;

use crate::coeff::Coefficient;
use crate::design::{DesignMatrix, Kind, Lambda, Literal};
use crate::error::{Error, Result};

/// The monomial `x_i^{(*)} · x_j^{(*)}`, with `(var_i, conj_i) <= (var_j, conj_j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub var_i: usize,
    pub conj_i: bool,
    pub var_j: usize,
    pub conj_j: bool,
}

impl Term {
    pub fn new(a: (usize, bool), b: (usize, bool)) -> Term {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        Term {
            var_i: lo.0,
            conj_i: lo.1,
            var_j: hi.0,
            conj_j: hi.1,
        }
    }

    /// `|x_v|^2` for complex designs, `x_v^2` for real ones.
    pub fn norm(var: usize, kind: Kind) -> Term {
        match kind {
            Kind::Complex => Term::new((var, false), (var, true)),
            Kind::Real => Term::new((var, false), (var, false)),
        }
    }

    pub fn conjugate(self) -> Term {
        Term::new((self.var_i, !self.conj_i), (self.var_j, !self.conj_j))
    }

    /// Packs the term into a `u64` whose order matches the derived `Ord`.
    /// Variable indices must fit in 31 bits.
    fn key(self) -> u64 {
        ((self.var_i as u64) << 33)
            | (u64::from(self.conj_i) << 32)
            | ((self.var_j as u64) << 1)
            | u64::from(self.conj_j)
    }

    fn from_key(k: u64) -> Term {
        Term {
            var_i: (k >> 33) as usize,
            conj_i: (k >> 32) & 1 == 1,
            var_j: ((k >> 1) & 0x7fff_ffff) as usize,
            conj_j: k & 1 == 1,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let star = |c: bool| if c { "*" } else { "" };
        write!(
            f,
            "x{}{}·x{}{}",
            self.var_i,
            star(self.conj_i),
            self.var_j,
            star(self.conj_j)
        )
    }
}

/// One cell of `G^H G`: a sum of monomials with exact coefficients.
/// Absent terms are zero; stored coefficients are never zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymbolicBilinear {
    terms: BTreeMap<Term, Coefficient>,
}

impl SymbolicBilinear {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, term: Term, c: Coefficient) {
        let v = self.terms.get(&term).copied().unwrap_or(Coefficient::ZERO) + c;
        if v.is_zero() {
            self.terms.remove(&term);
        } else {
            self.terms.insert(term, v);
        }
    }

    pub fn get(&self, term: &Term) -> Coefficient {
        self.terms.get(term).copied().unwrap_or(Coefficient::ZERO)
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Term, &Coefficient)> {
        self.terms.iter()
    }

    /// Flips every conjugation flag. Coefficients are real, so this is the
    /// complex conjugate of the whole sum.
    pub fn conjugate(&self) -> SymbolicBilinear {
        let mut out = SymbolicBilinear::new();
        for (t, c) in &self.terms {
            out.add(t.conjugate(), *c);
        }
        out
    }

    pub fn minus(&self, other: &SymbolicBilinear) -> SymbolicBilinear {
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add(*t, -*c);
        }
        out
    }

    /// `Σ_{v<k} |x_v|^2`.
    pub fn norm_sum(k: usize, kind: Kind) -> SymbolicBilinear {
        let mut out = SymbolicBilinear::new();
        for v in 0..k {
            out.add(Term::norm(v, kind), Coefficient::ONE);
        }
        out
    }
}

impl FromIterator<(Term, Coefficient)> for SymbolicBilinear {
    fn from_iter<I: IntoIterator<Item = (Term, Coefficient)>>(iter: I) -> Self {
        let mut out = SymbolicBilinear::new();
        for (t, c) in iter {
            out.add(t, c);
        }
        out
    }
}

impl fmt::Display for SymbolicBilinear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (t, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match c.unit_sign() {
                Some(1) => write!(f, "{t}")?,
                Some(_) => write!(f, "-{t}")?,
                None => write!(f, "{c}·{t}")?,
            }
        }
        Ok(())
    }
}

fn columns(design: &DesignMatrix) -> Vec<Vec<(usize, Literal)>> {
    (0..design.cols())
        .map(|c| design.column(c).map(|(r, l)| (r, *l)).collect())
        .collect()
}

fn gram_cell(
    kind: Kind,
    left: &[(usize, Literal)],
    right: &[(usize, Literal)],
) -> SymbolicBilinear {
    let mut acc = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < left.len() && j < right.len() {
        let (ra, a) = left[i];
        let (rb, b) = right[j];
        match ra.cmp(&rb) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                let conj_a = match kind {
                    Kind::Complex => !a.conj,
                    Kind::Real => a.conj,
                };
                let t = Term::new((a.var, conj_a), (b.var, b.conj));
                acc.push((t.key(), a.coeff * b.coeff));
                i += 1;
                j += 1;
            }
        }
    }
    acc.sort_unstable_by_key(|x| x.0);
    let mut terms = BTreeMap::new();
    for run in acc.chunk_by(|x, y| x.0 == y.0) {
        let c: Coefficient = run.iter().map(|x| x.1).sum();
        if !c.is_zero() {
            terms.insert(Term::from_key(run[0].0), c);
        }
    }
    SymbolicBilinear { terms }
}

/// `G^H G` as an `n × n` grid of symbolic cells.
pub fn gram(design: &DesignMatrix) -> Vec<Vec<SymbolicBilinear>> {
    let cols = columns(design);
    (0..design.cols())
        .map(|c1| {
            (0..design.cols())
                .map(|c2| gram_cell(design.kind(), &cols[c1], &cols[c2]))
                .collect()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    /// Gram cell `(c1, c2)`, i.e. the pair of design columns.
    pub cell: (usize, usize),
    /// Actual value minus expected value.
    pub residual: SymbolicBilinear,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub ok: bool,
    pub failure: Option<Failure>,
    pub checked_pairs: usize,
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "ok ({} column pairs checked)", self.checked_pairs),
            Some(Failure { cell, residual }) => write!(
                f,
                "FAILED at gram cell ({}, {}): residual {}",
                cell.0, cell.1, residual
            ),
        }
    }
}

/// Checks `G^H G = (Σ |x_i|^2) I_n` exactly. Only the upper triangle is
/// evaluated; the lower one is its conjugate.
pub fn verify(design: &DesignMatrix) -> VerificationReport {
    let cols = columns(design);
    let expected = SymbolicBilinear::norm_sum(design.num_vars(), design.kind());
    let mut checked = 0;
    for c1 in 0..design.cols() {
        for c2 in c1..design.cols() {
            checked += 1;
            let cell = gram_cell(design.kind(), &cols[c1], &cols[c2]);
            let residual = if c1 == c2 {
                cell.minus(&expected)
            } else {
                cell
            };
            if !residual.is_empty() {
                return VerificationReport {
                    ok: false,
                    failure: Some(Failure {
                        cell: (c1, c2),
                        residual,
                    }),
                    checked_pairs: checked,
                };
            }
        }
    }
    VerificationReport {
        ok: true,
        failure: None,
        checked_pairs: checked,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RodViolation {
    /// Condition (i): `var` occurs `count` times in column `col`.
    ColumnCount { col: usize, var: usize, count: usize },
    /// Condition (i): `var` occurs in both columns of row `row`.
    RowRepeat { row: usize, var: usize, cols: (usize, usize) },
    /// Condition (ii): no row completes the pair of cells in row `row`.
    Completion { row: usize, cols: (usize, usize) },
    /// Condition (iii): the proper 2×2 sub-matrix has sign product +1.
    SignProduct { rows: (usize, usize), cols: (usize, usize) },
}

impl fmt::Display for RodViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RodViolation::ColumnCount { col, var, count } => {
                write!(f, "(i) x{var} occurs {count} times in column {col}")
            }
            RodViolation::RowRepeat { row, var, cols } => {
                write!(f, "(i) x{var} repeats in row {row} at columns {} and {}", cols.0, cols.1)
            }
            RodViolation::Completion { row, cols } => {
                write!(f, "(ii) row {row}, columns {} and {} have no completing row", cols.0, cols.1)
            }
            RodViolation::SignProduct { rows, cols } => write!(
                f,
                "(iii) rows {},{} columns {},{} have sign product +1",
                rows.0, rows.1, cols.0, cols.1
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RodStructureReport {
    pub violation: Option<RodViolation>,
}

impl RodStructureReport {
    pub fn ok(&self) -> bool {
        self.violation.is_none()
    }
}

/// The combinatorial ROD test: each variable once per column and at most
/// once per row, every pair of cells in a row completed by some other row,
/// and every proper 2×2 sub-matrix with sign product −1.
pub fn check_rod_structure(design: &DesignMatrix) -> Result<RodStructureReport> {
    if design.kind() != Kind::Real {
        return Err(Error::Precondition("check_rod_structure needs a real design".into()));
    }
    if design.scaling().iter().any(|&l| l != Lambda::One) {
        return Err(Error::Precondition("check_rod_structure needs unscaled columns".into()));
    }
    let k = design.num_vars();
    let report = |v| Ok(RodStructureReport { violation: Some(v) });

    // row_of[c][v] = the row holding x_v in column c
    let mut row_of = vec![vec![usize::MAX; k]; design.cols()];
    for (c, slots) in row_of.iter_mut().enumerate() {
        for (r, l) in design.column(c) {
            slots[l.var] = r;
        }
        let count = design.column(c).count();
        if let Some(var) = slots.iter().position(|&r| r == usize::MAX) {
            return report(RodViolation::ColumnCount { col: c, var, count: 0 });
        }
        // validation already caps each variable at one per column
        debug_assert_eq!(count, k);
    }

    for r in 0..design.rows() {
        let cells: Vec<(usize, &Literal)> = design
            .row(r)
            .iter()
            .enumerate()
            .filter_map(|(c, e)| e.literal().map(|l| (c, l)))
            .collect();
        for (i, &(j, a)) in cells.iter().enumerate() {
            for &(j2, b) in &cells[i + 1..] {
                if a.var == b.var {
                    return report(RodViolation::RowRepeat {
                        row: r,
                        var: a.var,
                        cols: (j, j2),
                    });
                }
                let r2 = row_of[j2][a.var];
                let across = design.get(r2, j).literal();
                let down = design.get(r2, j2).literal();
                let (Some(across), Some(down)) = (across, down) else {
                    return report(RodViolation::Completion { row: r, cols: (j, j2) });
                };
                if across.var != b.var {
                    return report(RodViolation::Completion { row: r, cols: (j, j2) });
                }
                if a.sign() * b.sign() * across.sign() * down.sign() != -1 {
                    return report(RodViolation::SignProduct {
                        rows: (r, r2),
                        cols: (j, j2),
                    });
                }
            }
        }
    }
    Ok(RodStructureReport { violation: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> DesignMatrix {
        DesignMatrix::parse_tokens(s).unwrap()
    }

    #[test]
    fn alamouti_gram() {
        let g = gram(&d("x0 x1\n-x1* x0*"));
        let mut diag = SymbolicBilinear::new();
        diag.add(Term::new((0, true), (0, false)), Coefficient::ONE);
        diag.add(Term::new((1, true), (1, false)), Coefficient::ONE);
        assert_eq!(g[0][0], diag);
        assert_eq!(g[1][1], diag);
        assert!(g[0][1].is_empty() && g[1][0].is_empty());
    }

    #[test]
    fn zero_design_has_empty_gram() {
        let g = gram(&d("0"));
        assert_eq!(g.len(), 1);
        assert!(g[0][0].is_empty());
    }

    #[test]
    fn symmetric_pair_is_not_a_rod() {
        let m = d("x0 x1\nx1 x0");
        let rep = verify(&m);
        assert!(!rep.ok);
        let f = rep.failure.unwrap();
        assert_eq!(f.cell, (0, 1));
        let want: SymbolicBilinear =
            [(Term::new((0, false), (1, false)), Coefficient::from_int(2))].into_iter().collect();
        assert_eq!(f.residual, want);
        assert!(matches!(
            check_rod_structure(&m).unwrap().violation,
            Some(RodViolation::SignProduct { .. })
        ));
    }

    #[test]
    fn missing_variable_in_column() {
        let m = d("x0 x1\n0 x0");
        assert!(matches!(
            check_rod_structure(&m).unwrap().violation,
            Some(RodViolation::ColumnCount { col: 0, var: 1, .. })
        ));
        assert!(!verify(&m).ok);
    }

    #[test]
    fn structure_check_rejects_complex() {
        assert!(check_rod_structure(&d("x0 x1\n-x1* x0*")).is_err());
    }

    #[test]
    fn display_residual() {
        let rep = verify(&d("x0 x1\nx1 x0"));
        assert_eq!(rep.to_string(), "FAILED at gram cell (0, 1): residual 2·x0·x1");
    }
}
