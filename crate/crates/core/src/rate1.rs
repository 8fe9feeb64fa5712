//! Rate-1 RODs `W_n` and `Ŵ_n` of size `[ν(n), n, ν(n)]`.
//!
//! With `t = ν(n)` and `g_j = γ_t(j)`, both put `±y_{i ⊕ g_j}` in cell
//! `(i, j)`. `W_n` takes its sign from `|i · ψ(g_j)|`, `Ŵ_n` from
//! `|(i ⊕ g_j) · ψ(g_j)|`.

use std::fmt;
use std::str::FromStr;

use crate::design::{DesignMatrix, Entry, Kind};
use crate::error::{Error, Result};
use crate::maps::{nu, Family, MapPair};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rate1Variant {
    W,
    WHat,
}

impl fmt::Display for Rate1Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rate1Variant::W => "w",
            Rate1Variant::WHat => "what",
        })
    }
}

impl FromStr for Rate1Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "w" => Ok(Rate1Variant::W),
            "what" | "w_hat" | "w-hat" => Ok(Rate1Variant::WHat),
            _ => Err(Error::Unsupported(format!("rate-1 variant {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rate1Rod {
    pub n: usize,
    pub delay: usize,
    pub variant: Rate1Variant,
    pub family: Option<Family>,
    pub matrix: DesignMatrix,
}

fn parity(x: u64) -> bool {
    x.count_ones() % 2 == 1
}

fn checked_maps(n: usize, maps: &MapPair) -> Result<usize> {
    if n == 0 {
        return Err(Error::NonPositive { what: "n" });
    }
    let t = nu(n as u64)?.nu;
    if maps.t() != t {
        return Err(Error::MapOrderMismatch {
            have: maps.t(),
            want: t,
        });
    }
    if n > maps.len() {
        return Err(Error::TooManyColumns {
            n,
            t,
            rho: maps.len(),
        });
    }
    if let Some((x, y)) = maps.check_odd().witness {
        return Err(Error::OddConditionFailed(x, y));
    }
    Ok(t as usize)
}

/// Sign of cell `(i, j)`: `+1` or `−1`.
fn sign(variant: Rate1Variant, maps: &MapPair, i: usize, j: usize) -> i8 {
    let g = maps.gamma()[j];
    let mask = match variant {
        Rate1Variant::W => i as u64,
        Rate1Variant::WHat => i as u64 ^ g,
    };
    if parity(mask & maps.psi()[j]) {
        -1
    } else {
        1
    }
}

/// `W_n` or `Ŵ_n` from a licensed map pair of order `ν(n)`.
pub fn build_rate1(n: usize, variant: Rate1Variant, maps: &MapPair) -> Result<Rate1Rod> {
    let t = checked_maps(n, maps)?;
    let rows = (0..t)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let f = i ^ maps.gamma()[j] as usize;
                    Entry::var(sign(variant, maps, i, j), f)
                })
                .collect()
        })
        .collect();
    Ok(Rate1Rod {
        n,
        delay: t,
        variant,
        family: maps.family(),
        matrix: DesignMatrix::from_rows_with_vars(Kind::Real, t, rows)?,
    })
}

/// Shorthand using the maps of a named family at order `ν(n)`.
pub fn build_rate1_for(n: usize, variant: Rate1Variant, family: Family) -> Result<Rate1Rod> {
    if n == 0 {
        return Err(Error::NonPositive { what: "n" });
    }
    let maps = MapPair::for_family(nu(n as u64)?.nu, family)?;
    build_rate1(n, variant, &maps)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignRelationReport {
    pub checked: usize,
    /// First `(i, j)` with `s(i, j) ≠ ŝ(i ⊕ γ(j), j)`.
    pub mismatch: Option<(usize, usize)>,
}

impl SignRelationReport {
    pub fn ok(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// Audits `s(i, j) = ŝ(i ⊕ γ(j), j)` over every cell.
pub fn relate_w_what(n: usize, maps: &MapPair) -> Result<SignRelationReport> {
    let t = checked_maps(n, maps)?;
    let mut checked = 0;
    for i in 0..t {
        for j in 0..n {
            checked += 1;
            let i2 = i ^ maps.gamma()[j] as usize;
            if sign(Rate1Variant::W, maps, i, j) != sign(Rate1Variant::WHat, maps, i2, j) {
                return Ok(SignRelationReport {
                    checked,
                    mismatch: Some((i, j)),
                });
            }
        }
    }
    Ok(SignRelationReport {
        checked,
        mismatch: None,
    })
}
