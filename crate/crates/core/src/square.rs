//! Square RODs of order `t = 2^a` in `ρ(t)` variables.
//!
//! [`build_square_from_maps`] is the reference construction:
//! `B(i, j) = (−1)^{|i · ψ(i⊕j)|} x_{γ⁻¹(i⊕j)}` when `i ⊕ j` is in the image
//! of γ, and 0 otherwise. [`build_square_recursive`] produces the same
//! matrices from block recursions over the 1, 2, 4 and 8 bases.

use crate::design::{DesignMatrix, Entry, Kind};
use crate::error::{Error, Result};
use crate::grid::{self, Grid};
use crate::maps::{rho, Family, MapPair};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builder {
    MapDirect,
    Recursive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SquareRodFamily {
    pub family: Family,
    pub builder: Builder,
}

impl SquareRodFamily {
    pub fn build(self, t: u64) -> Result<DesignMatrix> {
        match self.builder {
            Builder::MapDirect => build_square(t, self.family),
            Builder::Recursive => build_square_recursive(t, self.family),
        }
    }
}

fn square_grid(maps: &MapPair) -> Result<Grid> {
    let rep = maps.check_odd();
    if let Some((x, y)) = rep.witness {
        return Err(Error::OddConditionFailed(x, y));
    }
    let t = usize::try_from(maps.t()).map_err(|_| Error::Unsupported("order".into()))?;
    let psi = maps.psi();
    Ok((0..t)
        .map(|i| {
            (0..t)
                .map(|j| match maps.var_at((i ^ j) as u64) {
                    Some(v) => {
                        let odd = (i as u64 & psi[v]).count_ones() % 2 == 1;
                        Entry::var(if odd { -1 } else { 1 }, v)
                    }
                    None => Entry::Zero,
                })
                .collect()
        })
        .collect())
}

/// The square ROD of a licensed map pair. Refuses pairs that fail the odd
/// condition, reporting the first bad pair of offsets.
pub fn build_square_from_maps(maps: &MapPair) -> Result<DesignMatrix> {
    let g = square_grid(maps)?;
    DesignMatrix::from_rows_with_vars(Kind::Real, maps.len(), g)
}

/// Shorthand for the map-built design of a named family.
pub fn build_square(t: u64, family: Family) -> Result<DesignMatrix> {
    build_square_from_maps(&MapPair::for_family(t, family)?)
}

/// The recursive construction of each family.
///
/// R doubles twice with single-variable corners, then applies the T₄ and
/// T₈ steps, restarting every factor of 16. ALP-O, ALP-Q and GP go from
/// order `n` to `16n` in one step.
pub fn build_square_recursive(t: u64, family: Family) -> Result<DesignMatrix> {
    let k = rho(t)?.rho;
    if !t.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(t));
    }
    if t > 1 << 16 {
        return Err(Error::Unsupported(format!("recursive build of order {t}")));
    }
    let t = t as usize;
    let g = match family {
        Family::R => rec_r(t),
        Family::AlpO => rec_alp_o(t),
        Family::AlpQ => rec_alp_q(t),
        Family::Gp => rec_gp(t),
    };
    DesignMatrix::from_rows_with_vars(Kind::Real, k, g)
}

fn rec_r(t: usize) -> Grid {
    if t <= 8 {
        return base::k_grid(t);
    }
    // n = 8·16^j with n < t ≤ 16n
    let mut n = 8;
    while 16 * n < t {
        n *= 16;
    }
    let r_n = rec_r(n);
    let r = rho(n as u64).expect("n > 0").rho;
    let corner = |m: &Grid, v: usize| {
        let s = m.len();
        grid::blocks(&[
            vec![m.clone(), grid::scalar_identity(Entry::var(1, v), s)],
            vec![grid::scalar_identity(Entry::var(-1, v), s), grid::transpose(m)],
        ])
    };
    let r2 = corner(&r_n, r);
    if t == 2 * n {
        return r2;
    }
    let r4 = corner(&r2, r + 1);
    if t == 4 * n {
        return r4;
    }
    let y = |i: usize, s: i8| Entry::var(s, r + 2 + i);
    let r8 = grid::blocks(&[
        vec![r4.clone(), grid::kron_identity(&base::t4(y(0, 1), y(1, -1)), n)],
        vec![grid::kron_identity(&base::t4(y(0, -1), y(1, -1)), n), grid::transpose(&r4)],
    ]);
    if t == 8 * n {
        return r8;
    }
    let top = base::t8([y(2, 1), y(3, -1), y(4, -1), y(5, -1)]);
    let bottom = base::t8([y(2, -1), y(3, -1), y(4, -1), y(5, -1)]);
    grid::blocks(&[
        vec![r8.clone(), grid::kron_identity(&top, n)],
        vec![grid::kron_identity(&bottom, n), grid::transpose(&r8)],
    ])
}

/// `O_n(y)` with `y_i = x_{8+i}`.
fn lifted(rec: fn(usize) -> Grid, t: usize) -> (usize, Grid) {
    let n = t / 16;
    (n, grid::shift_vars(&rec(n), 8))
}

fn rec_alp_o(t: usize) -> Grid {
    if t <= 8 {
        return base::k_grid(t);
    }
    let (n, y) = lifted(rec_alp_o, t);
    let k8 = base::k_grid(8);
    grid::blocks(&[
        vec![grid::identity_kron(n, &k8), grid::kron_identity(&y, 8)],
        vec![
            grid::negate(&grid::kron_identity(&grid::transpose(&y), 8)),
            grid::identity_kron(n, &grid::transpose(&k8)),
        ],
    ])
}

fn rec_alp_q(t: usize) -> Grid {
    if t <= 8 {
        return base::k_grid(t);
    }
    let (n, y) = lifted(rec_alp_q, t);
    let (l4, r4) = (base::l4(), base::r4());
    let z = grid::zeros(4 * n, 4 * n);
    let i = |m: &Grid| grid::identity_kron(n, m);
    let yk = grid::kron_identity(&y, 4);
    let ytk = grid::negate(&grid::kron_identity(&grid::transpose(&y), 4));
    let l4t = grid::transpose(&l4);
    grid::blocks(&[
        vec![i(&l4), z.clone(), i(&r4), yk.clone()],
        vec![z.clone(), i(&l4), ytk.clone(), i(&grid::transpose(&r4))],
        vec![i(&grid::negate(&grid::transpose(&r4))), yk, i(&l4t), z.clone()],
        vec![ytk, i(&grid::negate(&r4)), z, i(&l4t)],
    ])
}

fn rec_gp(t: usize) -> Grid {
    if t <= 8 {
        return base::k_grid(t);
    }
    let (n, y) = lifted(rec_gp, t);
    let k8 = base::k_grid(8);
    grid::blocks(&[
        vec![grid::kron_identity(&k8, n), grid::identity_kron(8, &y)],
        vec![
            grid::identity_kron(8, &grid::negate(&grid::transpose(&y))),
            grid::kron_identity(&grid::transpose(&k8), n),
        ],
    ])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CellDiff {
    pub row: usize,
    pub col: usize,
    pub left: Entry,
    pub right: Entry,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Comparison {
    Equal,
    Differ(Vec<CellDiff>),
}

impl Comparison {
    pub fn is_equal(&self) -> bool {
        matches!(self, Comparison::Equal)
    }

    pub fn diffs(&self) -> &[CellDiff] {
        match self {
            Comparison::Equal => &[],
            Comparison::Differ(d) => d,
        }
    }
}

/// Strict cell-by-cell comparison, signs and conjugation included.
pub fn compare_designs(a: &DesignMatrix, b: &DesignMatrix) -> Result<Comparison> {
    compare_grids(&a.to_rows(), &b.to_rows())
}

/// [`compare_designs`] on raw token grids, for matrices that need not be
/// valid designs (e.g. a printed matrix with a typo).
pub fn compare_grids(a: &[Vec<Entry>], b: &[Vec<Entry>]) -> Result<Comparison> {
    let shape = |g: &[Vec<Entry>]| (g.len(), g.first().map_or(0, Vec::len));
    if shape(a) != shape(b) || a.iter().chain(b).any(|r| r.len() != shape(a).1) {
        let ((p, n), (q, m)) = (shape(a), shape(b));
        return Err(Error::DimensionMismatch(format!("{p}x{n} vs {q}x{m}")));
    }
    let mut diffs = Vec::new();
    for (r, (ra, rb)) in a.iter().zip(b).enumerate() {
        for (c, (&x, &y)) in ra.iter().zip(rb).enumerate() {
            if x != y {
                diffs.push(CellDiff {
                    row: r,
                    col: c,
                    left: x,
                    right: y,
                });
            }
        }
    }
    Ok(if diffs.is_empty() {
        Comparison::Equal
    } else {
        Comparison::Differ(diffs)
    })
}

pub mod base {
    use super::*;

    /// A signed permutation matrix.
    pub type SignedPerm = Vec<Vec<i8>>;

    pub(crate) fn k_grid(t: usize) -> Grid {
        let maps = MapPair::for_family(t as u64, Family::R).expect("t is 1, 2, 4 or 8");
        square_grid(&maps).expect("small orders satisfy the odd condition")
    }

    /// `K_t` for `t ∈ {1, 2, 4, 8}`.
    pub fn k(t: u64) -> Result<DesignMatrix> {
        if !matches!(t, 1 | 2 | 4 | 8) {
            return Err(Error::Unsupported(format!("K_{t}")));
        }
        build_square(t, Family::R)
    }

    fn kron(a: &SignedPerm, b: &SignedPerm) -> SignedPerm {
        let (p, q) = (b.len(), b[0].len());
        (0..a.len() * p)
            .map(|i| {
                (0..a[0].len() * q)
                    .map(|j| a[i / p][j / q] * b[i % p][j % q])
                    .collect()
            })
            .collect()
    }

    /// `I₂⁰ = I`, `I₂¹ = diag(1, −1)`, `I₂² = [[0,1],[1,0]]`, `I₂³ = [[0,−1],[1,0]]`.
    pub fn i2(q: usize) -> SignedPerm {
        match q {
            0 => vec![vec![1, 0], vec![0, 1]],
            1 => vec![vec![1, 0], vec![0, -1]],
            2 => vec![vec![0, 1], vec![1, 0]],
            3 => vec![vec![0, -1], vec![1, 0]],
            _ => panic!("I_2^{q} is not defined"),
        }
    }

    /// `I₄⁰ = I`, `I₄¹ = I₂³ ⊗ I₂²`.
    pub fn i4(q: usize) -> SignedPerm {
        match q {
            0 => kron(&i2(0), &i2(0)),
            1 => kron(&i2(3), &i2(2)),
            _ => panic!("I_4^{q} is not defined"),
        }
    }

    /// `I₈⁰ = I`, `I₈¹ = I₂⁰ ⊗ I₄¹`, `I₈² = I₂³ ⊗ I₂¹ ⊗ I₂²`, `I₈³ = I₂³ ⊗ I₂² ⊗ I₂⁰`.
    pub fn i8(q: usize) -> SignedPerm {
        match q {
            0 => kron(&i2(0), &i4(0)),
            1 => kron(&i2(0), &i4(1)),
            2 => kron(&kron(&i2(3), &i2(1)), &i2(2)),
            3 => kron(&kron(&i2(3), &i2(2)), &i2(0)),
            _ => panic!("I_8^{q} is not defined"),
        }
    }

    /// `Σ_q ys[q] · mats[q]`; the supports must be disjoint.
    fn combine(mats: &[SignedPerm], ys: &[Entry]) -> Grid {
        let n = mats[0].len();
        let mut out = grid::zeros(n, n);
        for (m, &y) in mats.iter().zip(ys) {
            for i in 0..n {
                for j in 0..n {
                    if m[i][j] != 0 {
                        assert!(out[i][j].is_zero(), "overlapping supports");
                        out[i][j] = y.signed(m[i][j]);
                    }
                }
            }
        }
        out
    }

    /// `T₄(y₀, y₁) = y₀ I₄⁰ + y₁ I₄¹`.
    pub fn t4(y0: Entry, y1: Entry) -> Grid {
        combine(&[i4(0), i4(1)], &[y0, y1])
    }

    /// `T₈(y₂, …, y₅) = Σ y_{q+2} I₈^q`.
    pub fn t8(y: [Entry; 4]) -> Grid {
        combine(&[i8(0), i8(1), i8(2), i8(3)], &y)
    }

    /// Left quaternion block (`K₄` in `x₀..x₃`).
    pub fn l4() -> Grid {
        k_grid(4)
    }

    /// Right quaternion block in `x₄..x₇`.
    pub fn r4() -> Grid {
        const R4: [[(i8, usize); 4]; 4] = [
            [(1, 4), (1, 5), (1, 6), (1, 7)],
            [(-1, 5), (1, 4), (1, 7), (-1, 6)],
            [(-1, 6), (-1, 7), (1, 4), (1, 5)],
            [(-1, 7), (1, 6), (-1, 5), (1, 4)],
        ];
        R4.iter()
            .map(|r| r.iter().map(|&(s, v)| Entry::var(s, v)).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::verify;

    #[test]
    fn order_one_is_single_variable() {
        let m = build_square(1, Family::R).unwrap();
        assert_eq!(m.to_tokens(), "x0\n");
    }

    #[test]
    fn r16_first_column_sign() {
        let m = build_square(16, Family::R).unwrap();
        assert_eq!(m.get(1, 0).to_string(), "-x1");
    }

    #[test]
    fn bad_maps_refused_with_witness() {
        let mp = MapPair::new(4, vec![0, 1, 2, 3], vec![0, 1, 2, 3]).unwrap();
        assert_eq!(build_square_from_maps(&mp), Err(Error::OddConditionFailed(1, 2)));
    }

    #[test]
    fn i_matrices_are_signed_permutations() {
        let mats = vec![
            base::i2(0),
            base::i2(1),
            base::i2(2),
            base::i2(3),
            base::i4(0),
            base::i4(1),
            base::i8(0),
            base::i8(1),
            base::i8(2),
            base::i8(3),
        ];
        for m in mats {
            for i in 0..m.len() {
                assert_eq!(m[i].iter().filter(|&&x| x != 0).count(), 1);
                assert_eq!(m.iter().filter(|r| r[i] != 0).count(), 1);
            }
        }
    }

    #[test]
    fn t_blocks_are_rods() {
        let t4 = base::t4(Entry::var(1, 0), Entry::var(1, 1));
        let d = DesignMatrix::from_rows(Kind::Real, t4).unwrap();
        assert!(verify(&d).ok);
        let y = [0, 1, 2, 3].map(|v| Entry::var(1, v));
        let d = DesignMatrix::from_rows(Kind::Real, base::t8(y)).unwrap();
        assert!(verify(&d).ok);
    }

    #[test]
    fn compare_dimension_mismatch() {
        let a = build_square(2, Family::R).unwrap();
        let b = build_square(4, Family::R).unwrap();
        assert!(compare_designs(&a, &b).is_err());
        assert!(compare_designs(&a, &a).unwrap().is_equal());
    }
}
