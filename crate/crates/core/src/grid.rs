//! Dense entry grids and the block operations the recursive builders need.

use crate::design::Entry;

pub type Grid = Vec<Vec<Entry>>;

pub fn zeros(rows: usize, cols: usize) -> Grid {
    vec![vec![Entry::Zero; cols]; rows]
}

/// `e · I_n`.
pub fn scalar_identity(e: Entry, n: usize) -> Grid {
    let mut g = zeros(n, n);
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = e;
    }
    g
}

/// Literal transpose: no conjugation, no sign change.
pub fn transpose(m: &Grid) -> Grid {
    let (p, q) = (m.len(), m[0].len());
    (0..q).map(|j| (0..p).map(|i| m[i][j]).collect()).collect()
}

pub fn negate(m: &Grid) -> Grid {
    map(m, Entry::negate)
}

pub fn map(m: &Grid, f: impl Fn(Entry) -> Entry) -> Grid {
    m.iter().map(|r| r.iter().map(|&e| f(e)).collect()).collect()
}

/// Adds `k` to every variable index.
pub fn shift_vars(m: &Grid, k: usize) -> Grid {
    map(m, |e| match e.literal() {
        Some(l) => e.with_var(l.var + k),
        None => e,
    })
}

/// `m ⊗ I_n`.
pub fn kron_identity(m: &Grid, n: usize) -> Grid {
    let (p, q) = (m.len(), m[0].len());
    let mut out = zeros(p * n, q * n);
    for i in 0..p {
        for j in 0..q {
            if !m[i][j].is_zero() {
                for k in 0..n {
                    out[i * n + k][j * n + k] = m[i][j];
                }
            }
        }
    }
    out
}

/// `I_n ⊗ m`.
pub fn identity_kron(n: usize, m: &Grid) -> Grid {
    let (p, q) = (m.len(), m[0].len());
    let mut out = zeros(p * n, q * n);
    for k in 0..n {
        for i in 0..p {
            out[k * p + i][k * q..(k + 1) * q].copy_from_slice(&m[i]);
        }
    }
    out
}

/// Assembles a block matrix from rows of equally tall blocks.
pub fn blocks(rows: &[Vec<Grid>]) -> Grid {
    let mut out = Vec::new();
    for br in rows {
        for r in 0..br[0].len() {
            out.push(br.iter().flat_map(|b| b[r].iter().copied()).collect());
        }
    }
    out
}

pub fn vstack(parts: &[Grid]) -> Grid {
    parts.iter().flatten().cloned().collect()
}

pub fn hstack(left: &Grid, right: &Grid) -> Grid {
    left.iter()
        .zip(right)
        .map(|(a, b)| a.iter().chain(b).copied().collect())
        .collect()
}
