//! Rate-½ scaled complex orthogonal designs.
//!
//! `RH_n` (delay `ν(n)`) stacks 8×8 CODs in the first eight columns and
//! fills the remaining `n − 8` columns by substituting 8-entry column
//! vectors `Ā(i)` for the variables of the rate-1 RODs `W_{n−8}` and
//! `Ŵ_{n−8}`:
//!
//! ```text
//! RH_n = [ E₈  H ]    E₈ = [A(0); A(2); …; A(u−2)],  H = W_{n−8}[y_i ← Ā(2i+1)]
//!        [ O₈  Ĥ ]    O₈ = [A(1); A(3); …; A(u−1)],  Ĥ = Ŵ_{n−8}[y_i ← Ā(2i)]
//! ```
//!
//! with `u = ν(n)/8`. `TJC_n` is the older `(1/√2)[W_n; W_n*]` with twice
//! the delay. [`post_multiply`] by `Q_n` removes every zero from `RH_n`.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;

use crate::coeff::Coefficient;
use crate::design::{parse_token_rows, DesignMatrix, Entry, Kind, Literal};
use crate::error::{Error, Result};
use crate::grid::{self, Grid};
use crate::maps::{nu, Family};
use crate::rate1::{build_rate1_for, Rate1Variant};
use crate::verify::verify;

const COD_A: &str = "
    x0 -x1* -x2*   0 -x3*    0    0    0
    x1  x0*    0 -x2*    0 -x3*    0    0
    x2    0  x0*  x1*    0    0 -x3*    0
     0   x2  -x1   x0    0    0    0 -x3*
    x3    0    0    0  x0*  x1*  x2*    0
     0   x3    0    0  -x1   x0    0  x2*
     0    0   x3    0  -x2    0   x0 -x1*
     0    0    0   x3    0  -x2   x1  x0*
";

const COD_B: &str = "
    x0 -x1* -x2* -x3*    0    0    0    0
    x1  x0*    0    0 -x2* -x3*    0    0
    x2    0  x0*    0  x1*    0 -x3*    0
     0   x2  -x1    0   x0    0    0 -x3*
    x3    0    0  x0*    0  x1*  x2*    0
     0   x3    0  -x1    0   x0    0  x2*
     0    0   x3  -x2    0    0   x0 -x1*
     0    0    0    0   x3  -x2   x1  x0*
";

/// `C(x₀..x₃) = (1/√2)[−x₃*, x₂*, −x₁*, −x₀, x₀*, −x₁, −x₂, −x₃]ᵀ` as
/// (sign, variable, conjugated).
const COD_C: [(i8, usize, bool); 8] = [
    (-1, 3, true),
    (1, 2, true),
    (-1, 1, true),
    (-1, 0, false),
    (1, 0, true),
    (-1, 1, false),
    (-1, 2, false),
    (-1, 3, false),
];

/// The 8×8 building blocks and their indexed aliases.
pub struct CodBlocks;

impl CodBlocks {
    fn table(src: &str, base: usize) -> Grid {
        let g = parse_token_rows(src).expect("block tables are well formed");
        grid::shift_vars(&g, base)
    }

    /// `A(x_b, …, x_{b+3})`.
    pub fn a(base: usize) -> Grid {
        Self::table(COD_A, base)
    }

    /// `B(x_b, …, x_{b+3})`.
    pub fn b(base: usize) -> Grid {
        Self::table(COD_B, base)
    }

    /// `A(2i) = A(x_{8i..8i+3})`, `A(2i+1) = B(x_{8i+4..8i+7})`.
    pub fn indexed(i: usize) -> Grid {
        let base = 8 * (i / 2);
        if i.is_multiple_of(2) {
            Self::a(base)
        } else {
            Self::b(base + 4)
        }
    }

    /// `C(x_b, …, x_{b+3})`.
    pub fn c(base: usize) -> Vec<Entry> {
        COD_C
            .iter()
            .map(|&(s, v, conj)| Entry::new(s, base + v, conj, true))
            .collect()
    }

    /// `Ā(i) = C(x_{4i}, …, x_{4i+3})`.
    pub fn bar(i: usize) -> Vec<Entry> {
        Self::c(4 * i)
    }

    /// `A(x₀..x₃)` as a design.
    pub fn a_design() -> DesignMatrix {
        DesignMatrix::from_rows(Kind::Complex, Self::a(0)).expect("A is well formed")
    }

    /// `B(x₀..x₃)` as a design.
    pub fn b_design() -> DesignMatrix {
        DesignMatrix::from_rows(Kind::Complex, Self::b(0)).expect("B is well formed")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CodConstruction {
    Rh,
    Tjc,
}

impl fmt::Display for CodConstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CodConstruction::Rh => "rh",
            CodConstruction::Tjc => "tjc",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledCod {
    pub n: usize,
    pub construction: CodConstruction,
    /// Family of the rate-1 RODs used, when any were.
    pub family: Option<Family>,
    pub post_multiplied: bool,
    pub matrix: DesignMatrix,
}

impl ScaledCod {
    pub fn delay(&self) -> usize {
        self.matrix.rows()
    }

    pub fn num_vars(&self) -> usize {
        self.matrix.num_vars()
    }

    pub fn rate(&self) -> Ratio<usize> {
        Ratio::new(self.num_vars(), self.delay())
    }
}

/// `RH_n` for `n ≥ 5`. For `n ≤ 8` this is the first `n` columns of
/// `A(x₀..x₃)`; smaller `n` would need a delay below 8, which this
/// construction does not reach, so `n ≤ 4` is refused.
pub fn build_rh(n: usize, family: Family) -> Result<ScaledCod> {
    if n < 5 {
        return Err(Error::Unsupported(format!(
            "RH_{n}: n must be at least 5 (use TJC or a square design)"
        )));
    }
    let delay = nu(n as u64)?.nu as usize;
    let k = delay / 2;
    if n <= 8 {
        let rows = CodBlocks::a(0).into_iter().map(|r| r[..n].to_vec()).collect();
        return Ok(ScaledCod {
            n,
            construction: CodConstruction::Rh,
            family: None,
            post_multiplied: false,
            matrix: DesignMatrix::from_rows_with_vars(Kind::Complex, k, rows)?,
        });
    }
    let t = n - 8;
    let u = delay / 8;
    let even: Vec<Grid> = (0..u).step_by(2).map(CodBlocks::indexed).collect();
    let odd: Vec<Grid> = (1..u).step_by(2).map(CodBlocks::indexed).collect();
    let w = build_rate1_for(t, Rate1Variant::W, family)?.matrix;
    let w_hat = build_rate1_for(t, Rate1Variant::WHat, family)?.matrix;
    let h = substitute(&w, 1);
    let h_hat = substitute(&w_hat, 0);
    let top = grid::hstack(&grid::vstack(&even), &h);
    let bottom = grid::hstack(&grid::vstack(&odd), &h_hat);
    let rows = grid::vstack(&[top, bottom]);
    Ok(ScaledCod {
        n,
        construction: CodConstruction::Rh,
        family: Some(family),
        post_multiplied: false,
        matrix: DesignMatrix::from_rows_with_vars(Kind::Complex, k, rows)?,
    })
}

/// Replaces each `±y_i` of a rate-1 ROD by `±Ā(2i + offset)`; every row of
/// the ROD becomes eight rows.
fn substitute(w: &DesignMatrix, offset: usize) -> Grid {
    let mut out = grid::zeros(8 * w.rows(), w.cols());
    for i in 0..w.rows() {
        for (j, cell) in w.row(i).iter().enumerate() {
            let l = cell.literal().expect("rate-1 RODs have no zeros");
            for (r, e) in CodBlocks::bar(2 * l.var + offset).into_iter().enumerate() {
                out[8 * i + r][j] = e.signed(l.sign());
            }
        }
    }
    out
}

/// `TJC_n = (1/√2)[W_n; W_n*]`, delay `2ν(n)`, every column λ = 2.
pub fn build_tjc(n: usize, family: Family) -> Result<ScaledCod> {
    let w = build_rate1_for(n, Rate1Variant::W, family)?.matrix;
    let top = grid::map(&w.to_rows(), Entry::scaled);
    let bottom = grid::map(&top, Entry::conjugate);
    Ok(ScaledCod {
        n,
        construction: CodConstruction::Tjc,
        family: Some(family),
        post_multiplied: false,
        matrix: DesignMatrix::from_rows_with_vars(
            Kind::Complex,
            w.num_vars(),
            grid::vstack(&[top, bottom]),
        )?,
    })
}

/// A real `n × n` right multiplier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PostMultiplier {
    pub n: usize,
    pub matrix: Vec<Vec<Coefficient>>,
}

impl PostMultiplier {
    /// `Q_n = diag(A, I_{n−8})` where `A = (1/√2)[[I₄, J₄], [J₄, −I₄]]`
    /// and `J₄` is the 4×4 reversal.
    pub fn q(n: usize) -> Result<PostMultiplier> {
        if n < 8 {
            return Err(Error::Unsupported(format!("Q_{n} needs n ≥ 8")));
        }
        let mut m = Self::identity(n).matrix;
        let h = Coefficient::inv_sqrt2();
        for j in 0..8 {
            m[j][j] = if j < 4 { h } else { -h };
            m[j][7 - j] = h;
        }
        Ok(PostMultiplier { n, matrix: m })
    }

    pub fn identity(n: usize) -> PostMultiplier {
        let matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            Coefficient::ONE
                        } else {
                            Coefficient::ZERO
                        }
                    })
                    .collect()
            })
            .collect();
        PostMultiplier { n, matrix }
    }

    /// `QᵀQ = I` in exact arithmetic.
    pub fn is_orthogonal(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                let dot: Coefficient =
                    (0..self.n).map(|r| self.matrix[r][i] * self.matrix[r][j]).sum();
                dot == if i == j { Coefficient::ONE } else { Coefficient::ZERO }
            })
        })
    }
}

/// `G · Q` for any design. Each product cell must collapse to a single
/// allowed monomial.
pub fn post_multiply_design(d: &DesignMatrix, q: &PostMultiplier) -> Result<DesignMatrix> {
    if d.cols() != q.n {
        return Err(Error::DimensionMismatch(format!(
            "{} columns times Q_{}",
            d.cols(),
            q.n
        )));
    }
    let mut rows = Vec::with_capacity(d.rows());
    for r in 0..d.rows() {
        let src = d.row(r);
        let mut row = Vec::with_capacity(q.n);
        for c in 0..q.n {
            let mut acc: BTreeMap<(usize, bool), Coefficient> = BTreeMap::new();
            for (j, e) in src.iter().enumerate() {
                let qc = q.matrix[j][c];
                if let (Some(l), false) = (e.literal(), qc.is_zero()) {
                    let slot = acc.entry((l.var, l.conj)).or_insert(Coefficient::ZERO);
                    *slot = *slot + l.coeff * qc;
                }
            }
            acc.retain(|_, v| !v.is_zero());
            let cell = match acc.len() {
                0 => Entry::Zero,
                1 => {
                    let (&(var, conj), &coeff) = acc.iter().next().expect("one term");
                    if !coeff.is_entry_value() {
                        return Err(Error::NotMonomial { row: r, col: c });
                    }
                    Entry::Lit(Literal { coeff, var, conj })
                }
                _ => return Err(Error::NotMonomial { row: r, col: c }),
            };
            row.push(cell);
        }
        rows.push(row);
    }
    DesignMatrix::from_rows_with_vars(d.kind(), d.num_vars(), rows)
}

pub fn post_multiply(cod: &ScaledCod, q: &PostMultiplier) -> Result<ScaledCod> {
    if cod.n != q.n {
        return Err(Error::DimensionMismatch(format!("n = {} vs Q_{}", cod.n, q.n)));
    }
    Ok(ScaledCod {
        matrix: post_multiply_design(&cod.matrix, q)?,
        post_multiplied: true,
        ..cod.clone()
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZeroStats {
    pub zero_count: usize,
    pub cells: usize,
    pub zero_fraction: Ratio<usize>,
}

pub fn zero_stats(d: &DesignMatrix) -> ZeroStats {
    let cells = d.rows() * d.cols();
    let zero_count = d.zero_count();
    ZeroStats {
        zero_count,
        cells,
        zero_fraction: Ratio::new(zero_count, cells),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StackKind {
    /// `[A(i) Ā(j); A(j) Ā(i)]`, a scaled-COD iff `i + j` is odd.
    Mixed,
    /// `[Ā(i) −Ā(j); Ā(j) Ā(i)]`, a scaled-COD iff `i ≠ j`.
    Bar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StackCase {
    pub kind: StackKind,
    pub i: usize,
    pub j: usize,
    pub verifies: bool,
    pub expected: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockIdentityReport {
    pub cases: Vec<StackCase>,
}

impl BlockIdentityReport {
    pub fn ok(&self) -> bool {
        self.cases.iter().all(|c| c.verifies == c.expected)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &StackCase> {
        self.cases.iter().filter(|c| c.verifies != c.expected)
    }
}

/// The stack of `kind` for `(i, j)`, or `None` when it is not even a
/// well-formed design (e.g. a variable repeated within a column).
pub fn block_stack(kind: StackKind, i: usize, j: usize) -> Option<DesignMatrix> {
    let rows = match kind {
        StackKind::Mixed => {
            let col = |b: Vec<Entry>| b.into_iter().map(|e| vec![e]).collect::<Grid>();
            grid::vstack(&[
                grid::hstack(&CodBlocks::indexed(i), &col(CodBlocks::bar(j))),
                grid::hstack(&CodBlocks::indexed(j), &col(CodBlocks::bar(i))),
            ])
        }
        StackKind::Bar => {
            let (bi, bj) = (CodBlocks::bar(i), CodBlocks::bar(j));
            let top = bi.iter().zip(&bj).map(|(a, b)| vec![*a, b.negate()]);
            let bottom = bj.iter().zip(&bi).map(|(a, b)| vec![*a, *b]);
            top.chain(bottom).collect()
        }
    };
    DesignMatrix::from_rows(Kind::Complex, rows)
        .ok()
        .map(|d| d.with_dense_vars())
}

/// Every stack for `i, j < limit`, each checked against its parity rule.
pub fn block_identity_checks(limit: usize) -> BlockIdentityReport {
    let mut cases = Vec::new();
    for kind in [StackKind::Mixed, StackKind::Bar] {
        for i in 0..limit {
            for j in 0..limit {
                let verifies = block_stack(kind, i, j).is_some_and(|d| verify(&d).ok);
                let expected = match kind {
                    StackKind::Mixed => (i + j) % 2 == 1,
                    StackKind::Bar => i != j,
                };
                cases.push(StackCase {
                    kind,
                    i,
                    j,
                    verifies,
                    expected,
                });
            }
        }
    }
    BlockIdentityReport { cases }
}
