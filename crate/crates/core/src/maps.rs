//! Hurwitz-Radon numbers and the index maps that define square RODs.
//!
//! A square ROD of order `t = 2^a` is determined by an injective
//! `γ: Z_ρ(t) → Z_t` (where the variable `x_i` sits along XOR offset `γ(i)`)
//! and a sign map `ψ` on the image of `γ`. A pair is usable when every two
//! offsets satisfy the odd condition checked by [`check_odd_condition`].

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Orders above `2^MAX_LOG2` are refused: nothing that large can be built
/// as a matrix and the GP formulas would need wider integers.
pub const MAX_LOG2: u32 = 30;

/// γ̂: the eight offsets used at each level above 8.
pub const GAMMA_HAT: [u64; 8] = [1, 2, 4, 7, 8, 11, 13, 14];
/// φ₁ on Z_8.
pub const PHI1: [u64; 8] = [0, 1, 2, 3, 4, 7, 5, 6];
/// φ₂(γ̂(m)) for m = 0..8. The entry for γ̂(5) = 11 is 14; see the README.
pub const PHI2: [u64; 8] = [1, 2, 4, 6, 8, 14, 10, 12];
/// χ₄′, the auxiliary permutation of the quaternion family.
pub const CHI4_PRIME: [u64; 4] = [0, 1, 3, 2];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HurwitzRadonDecomposition {
    pub n: u64,
    pub a: u32,
    pub b: u64,
    pub c: u32,
    pub d: u32,
    pub rho: usize,
}

/// `n = 2^a (2b+1)`, `a = 4c + d`, `ρ(n) = 8c + 2^d`.
pub fn rho(n: u64) -> Result<HurwitzRadonDecomposition> {
    if n == 0 {
        return Err(Error::NonPositive { what: "n" });
    }
    let a = n.trailing_zeros();
    let b = (n >> a) / 2;
    let (c, d) = (a / 4, a % 4);
    Ok(HurwitzRadonDecomposition {
        n,
        a,
        b,
        c,
        d,
        rho: 8 * c as usize + (1usize << d),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Nu {
    pub nu: u64,
    pub delta: u32,
}

/// Minimal delay of a rate-1 ROD on `n` antennas.
pub fn nu(n: u64) -> Result<Nu> {
    if n == 0 {
        return Err(Error::NonPositive { what: "n" });
    }
    let s = (n - 1) / 8;
    let r = (n - 1) % 8 + 1;
    let delta = 4 * s
        + match r {
            1 => 0,
            2 => 1,
            3 | 4 => 2,
            _ => 3,
        };
    if delta > u64::from(MAX_LOG2) {
        return Err(Error::TooLarge(delta as u32));
    }
    Ok(Nu {
        nu: 1 << delta,
        delta: delta as u32,
    })
}

fn log2_exact(t: u64) -> Result<u32> {
    if t == 0 || !t.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(t));
    }
    let a = t.trailing_zeros();
    if a > MAX_LOG2 {
        return Err(Error::TooLarge(a));
    }
    Ok(a)
}

/// `(t − x) mod t`, the two's complement in `F_2^a`.
fn complement(x: u64, t: u64) -> u64 {
    (t - x % t) % t
}

/// `ψ_e(m)` for `e ∈ {1,2,4,8}`, `m < e`.
fn psi_small(m: u64, e: u64) -> u64 {
    complement(PHI1[m as usize], e)
}

fn parity(x: u64) -> bool {
    x.count_ones() % 2 == 1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaMap {
    pub t: u64,
    /// `table[i] = γ(i)` for `i < ρ(t)`.
    pub table: Vec<u64>,
}

impl GammaMap {
    pub fn inverse(&self, x: u64) -> Option<usize> {
        self.table.iter().position(|&g| g == x)
    }
}

/// `γ(i) = i` for `i ≤ 7`, `γ(8l + m) = 2^{4l−1} γ̂(m)` above.
pub fn gamma(t: u64) -> Result<GammaMap> {
    log2_exact(t)?;
    let table: Vec<u64> = (0..rho(t)?.rho)
        .map(|i| {
            let (l, m) = (i / 8, i % 8);
            if l == 0 {
                i as u64
            } else {
                (1u64 << (4 * l - 1)) * GAMMA_HAT[m]
            }
        })
        .collect();
    check_injective(t, &table)?;
    Ok(GammaMap { t, table })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiMap {
    pub t: u64,
    pairs: Vec<(u64, u64)>,
}

impl PsiMap {
    /// `ψ(x)` for `x` in the image of γ.
    pub fn get(&self, x: u64) -> Result<u64> {
        self.pairs
            .iter()
            .find(|p| p.0 == x)
            .map(|p| p.1)
            .ok_or(Error::OutOfDomain { map: "psi", value: x })
    }

    pub fn pairs(&self) -> &[(u64, u64)] {
        &self.pairs
    }
}

/// `ψ_t(x) = (t − φ(x)) mod t`, with `φ = φ₁` on Z_8 and
/// `φ(2^{4l−1} γ̂(m)) = 2^{4l−1} φ₂(γ̂(m))`.
pub fn psi(t: u64) -> Result<PsiMap> {
    let g = gamma(t)?;
    let pairs: Vec<(u64, u64)> = g
        .table
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let phi = if i < 8 {
                PHI1[i]
            } else {
                (1u64 << (4 * (i / 8) - 1)) * PHI2[i % 8]
            };
            (x, complement(phi, t))
        })
        .collect();
    let values: Vec<u64> = pairs.iter().map(|p| p.1).collect();
    check_injective(t, &values)?;
    Ok(PsiMap { t, pairs })
}

/// The four square-ROD families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// γ/ψ of the main construction.
    R,
    /// Adams-Lax-Phillips, octonion form.
    AlpO,
    /// Adams-Lax-Phillips, quaternion form.
    AlpQ,
    /// Geramita-Pullman.
    Gp,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::R, Family::AlpO, Family::AlpQ, Family::Gp];

    pub fn tag(self) -> &'static str {
        match self {
            Family::R => "R",
            Family::AlpO => "ALP-O",
            Family::AlpQ => "ALP-Q",
            Family::Gp => "GP",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        match s.to_ascii_uppercase().replace('_', "-").as_str() {
            "R" => Ok(Family::R),
            "ALP-O" => Ok(Family::AlpO),
            "ALP-Q" => Ok(Family::AlpQ),
            "GP" => Ok(Family::Gp),
            _ => Err(Error::Unsupported(format!("family {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiMap {
    pub t: u64,
    pub family: Family,
    /// `gamma[x] = γ_t(x)`.
    pub gamma: Vec<u64>,
    /// `chi[x] = χ_t(x)`, so that `ψ_t = χ_t ∘ γ_t^{-1}`.
    pub chi: Vec<u64>,
}

/// The (γ, χ) tables of the ALP-O, ALP-Q and GP families. For `t ≤ 8`
/// every family has γ = identity and χ = ψ_t.
pub fn chi_family(t: u64, family: Family) -> Result<ChiMap> {
    let hr = rho(t)?;
    log2_exact(t)?;
    let (c, d) = (hr.c, hr.d);
    let mut gamma = Vec::with_capacity(hr.rho);
    let mut chi = Vec::with_capacity(hr.rho);
    for x in 0..hr.rho as u64 {
        let (l, m) = ((x / 8) as u32, x % 8);
        let (g, ch) = if t <= 8 {
            (x, psi_small(x, t))
        } else {
            match family {
                Family::R => {
                    return Err(Error::Unsupported("family R has no χ table".into()));
                }
                Family::AlpO => alp_o_entry(t, l, m, c, d),
                Family::AlpQ => alp_q_entry(t, l, m, c, d),
                Family::Gp => gp_entry(t, l, m, c, d)?,
            }
        };
        gamma.push(g);
        chi.push(ch);
    }
    check_injective(t, &gamma)?;
    check_injective(t, &chi)?;
    Ok(ChiMap {
        t,
        family,
        gamma,
        chi,
    })
}

fn alp_o_entry(t: u64, l: u32, m: u64, c: u32, d: u32) -> (u64, u64) {
    let p8 = 8u64.pow(l);
    let g = t - (t >> l) + p8 * m;
    let ch = if l == 0 && m == 0 {
        0
    } else if m == 0 {
        t >> l
    } else if l == c {
        p8 * psi_small(m, 1 << d)
    } else {
        (t >> (l + 1)) + p8 * psi_small(m, 8)
    };
    (g, ch)
}

fn alp_q_entry(t: u64, l: u32, m: u64, c: u32, d: u32) -> (u64, u64) {
    let p4 = 4u64.pow(l);
    let g = if m <= 3 {
        t - (t >> (2 * l)) + p4 * m
    } else {
        t - (t >> (2 * l + 1)) + p4 * (m - 4)
    };
    // (l, m) = (0, 4) maps to t/2; the alternative value 4 would collide
    // with χ(8) = 4 and break injectivity.
    let ch = if l == 0 && m == 0 {
        0
    } else if m == 0 {
        t >> (2 * l)
    } else if m == 4 {
        t >> (2 * l + 1)
    } else if l == c {
        p4 * psi_small(m, 1 << d)
    } else if m <= 3 {
        (t >> (2 * l + 1)) + p4 * psi_small(m, 4)
    } else {
        (t >> (2 * l + 2)) + p4 * CHI4_PRIME[(m - 4) as usize]
    };
    (g, ch)
}

fn gp_entry(t: u64, l: u32, m: u64, c: u32, d: u32) -> Result<(u64, u64)> {
    let exact = |num: u128, den: u128, what: &'static str| -> Result<u64> {
        if !num.is_multiple_of(den) {
            return Err(Error::NonIntegral {
                what,
                detail: format!("{num}/{den}"),
            });
        }
        Ok((num / den) as u64)
    };
    let t128 = u128::from(t);
    let p16 = 16u128.pow(l);
    let base = exact(8 * t128 * (p16 - 1), 15 * p16, "GP gamma base")?;
    let g = if l < c {
        base + exact(t128 * u128::from(m), 16 * p16, "GP gamma offset")?
    } else {
        base + m
    };
    let ch = if l == 0 && m == 0 {
        0
    } else if m == 0 {
        exact(t128 / 2, p16 / 16, "GP chi level")?
    } else if l == c {
        psi_small(m, 1 << d)
    } else {
        exact(t128 / 2, p16, "GP chi level")?
            + exact(t128 * u128::from(psi_small(m, 8)), 16 * p16, "GP chi offset")?
    };
    Ok((g, ch))
}

fn check_injective(t: u64, table: &[u64]) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    if table.iter().all(|&x| x < t && seen.insert(x)) {
        Ok(())
    } else {
        Err(Error::BadMapTable { t })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OddMode {
    /// Second table is ψ, indexed by the γ value; witnesses are γ values.
    Psi,
    /// Second table is χ, indexed by the domain point; witnesses are domain points.
    Chi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OddConditionReport {
    pub ok: bool,
    pub witness: Option<(u64, u64)>,
}

/// Checks that `|(s(x) ⊕ s(y)) · (g(x) ⊕ g(y))|` is odd for every pair of
/// distinct domain points, where `g = gamma_table` and `s` is ψ∘γ or χ.
/// Both tables are indexed by the domain point. Pairs are scanned in
/// colexicographic order and the first failing pair is the witness.
pub fn check_odd_condition(
    gamma_table: &[u64],
    sign_table: &[u64],
    mode: OddMode,
) -> OddConditionReport {
    for y in 1..gamma_table.len() {
        for x in 0..y {
            let w = (sign_table[x] ^ sign_table[y]) & (gamma_table[x] ^ gamma_table[y]);
            if !parity(w) {
                let witness = match mode {
                    OddMode::Psi => (gamma_table[x], gamma_table[y]),
                    OddMode::Chi => (x as u64, y as u64),
                };
                return OddConditionReport {
                    ok: false,
                    witness: Some(witness),
                };
            }
        }
    }
    OddConditionReport {
        ok: true,
        witness: None,
    }
}

/// The parity property of φ₂ on `F = γ̂(Z_8)`, complements taken in
/// `F_2^4`: `|φ₂(x)‾ · x|` is odd for every `x`, and
/// `|φ₂(x)‾ · y| + |φ₂(y)‾ · x|` is odd for every `x ≠ y`. A failing
/// single point is reported as `(x, x)`.
pub fn check_phi2_parity() -> OddConditionReport {
    let bar = |m: usize| complement(PHI2[m], 16);
    let fail = |w| OddConditionReport {
        ok: false,
        witness: Some(w),
    };
    for (m, &x) in GAMMA_HAT.iter().enumerate() {
        if !parity(bar(m) & x) {
            return fail((x, x));
        }
    }
    for (j, &y) in GAMMA_HAT.iter().enumerate().skip(1) {
        for (i, &x) in GAMMA_HAT.iter().enumerate().take(j) {
            let w = (bar(i) & y).count_ones() + (bar(j) & x).count_ones();
            if w % 2 == 0 {
                return fail((x, y));
            }
        }
    }
    OddConditionReport {
        ok: true,
        witness: None,
    }
}

/// A (γ, ψ) pair for order `t`, with ψ stored along γ's domain:
/// variable `x_i` sits at XOR offset `gamma[i]` with sign mask `psi[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapPair {
    t: u64,
    family: Option<Family>,
    gamma: Vec<u64>,
    psi: Vec<u64>,
    index: HashMap<u64, usize>,
}

impl MapPair {
    /// Any injective pair of tables into `Z_t`. The odd condition is not
    /// checked here.
    pub fn new(t: u64, gamma: Vec<u64>, psi: Vec<u64>) -> Result<MapPair> {
        log2_exact(t)?;
        if gamma.len() != psi.len() {
            return Err(Error::BadMapTable { t });
        }
        check_injective(t, &gamma)?;
        check_injective(t, &psi)?;
        let index = gamma.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        Ok(MapPair {
            t,
            family: None,
            gamma,
            psi,
            index,
        })
    }

    pub fn for_family(t: u64, family: Family) -> Result<MapPair> {
        let mut mp = match family {
            Family::R => {
                let g = gamma(t)?;
                let p = psi(t)?;
                let s = p.pairs().iter().map(|q| q.1).collect();
                MapPair::new(t, g.table, s)?
            }
            _ => {
                let ch = chi_family(t, family)?;
                MapPair::new(t, ch.gamma, ch.chi)?
            }
        };
        mp.family = Some(family);
        Ok(mp)
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn family(&self) -> Option<Family> {
        self.family
    }

    /// Number of variables, `|domain|`.
    pub fn len(&self) -> usize {
        self.gamma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gamma.is_empty()
    }

    pub fn gamma(&self) -> &[u64] {
        &self.gamma
    }

    /// `ψ(γ(i))` for each domain point `i`.
    pub fn psi(&self) -> &[u64] {
        &self.psi
    }

    /// The variable sitting at XOR offset `x`, if any.
    pub fn var_at(&self, x: u64) -> Option<usize> {
        self.index.get(&x).copied()
    }

    pub fn check_odd(&self) -> OddConditionReport {
        check_odd_condition(&self.gamma, &self.psi, OddMode::Psi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rho_values() {
        assert_eq!(rho(16).unwrap().rho, 9);
        let r = rho(16).unwrap();
        assert_eq!((r.a, r.c, r.d), (4, 1, 0));
        assert_eq!(rho(32).unwrap().rho, 10);
        assert_eq!(rho(1).unwrap().rho, 1);
        assert_eq!(rho(12).unwrap().rho, 4);
        assert!(rho(0).is_err());
    }

    #[test]
    fn nu_values() {
        assert_eq!(nu(9).unwrap().nu, 16);
        assert_eq!(nu(10).unwrap().nu, 32);
        assert_eq!(nu(1).unwrap().nu, 1);
        assert_eq!(nu(8).unwrap(), Nu { nu: 8, delta: 3 });
        assert!(nu(0).is_err());
    }

    #[test]
    fn gamma_values() {
        assert_eq!(gamma(16).unwrap().table[8], 8);
        let g32 = gamma(32).unwrap();
        assert_eq!(g32.table[9], 16);
        assert_eq!(g32.table.len(), 10);
        assert_eq!(gamma(8).unwrap().table, (0..8).collect::<Vec<_>>());
        assert!(gamma(12).is_err());
    }

    #[test]
    fn psi_values() {
        let p = psi(16).unwrap();
        assert_eq!(p.get(5).unwrap(), 9);
        assert_eq!(p.get(0).unwrap(), 0);
        assert_eq!(psi(32).unwrap().get(8).unwrap(), 24);
        assert!(p.get(9).is_err());
    }

    #[test]
    fn alp_o_level_one() {
        let ch = chi_family(16, Family::AlpO).unwrap();
        assert_eq!((ch.gamma[8], ch.chi[8]), (8, 8));
    }

    #[test]
    fn small_orders_are_identity() {
        for f in [Family::AlpO, Family::AlpQ, Family::Gp] {
            let ch = chi_family(8, f).unwrap();
            assert_eq!(ch.gamma, (0..8).collect::<Vec<_>>());
            let p = psi(8).unwrap();
            let want: Vec<u64> = (0..8).map(|x| p.get(x).unwrap()).collect();
            assert_eq!(ch.chi, want);
        }
    }

    #[test]
    fn identity_pair_fails_at_one_two() {
        let id = [0, 1, 2, 3];
        let rep = check_odd_condition(&id, &id, OddMode::Psi);
        assert_eq!(rep.witness, Some((1, 2)));
    }

    #[test]
    fn family_tags_parse() {
        for f in Family::ALL {
            assert_eq!(f.tag().parse::<Family>().unwrap(), f);
        }
        assert_eq!("alp_q".parse::<Family>().unwrap(), Family::AlpQ);
        assert!("X".parse::<Family>().is_err());
    }
}
