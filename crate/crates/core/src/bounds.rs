//! Delay and rate bounds: the Hopf-Stiefel function, the maximal-rate
//! delay bound, and the comparison table against rate-½ designs.

use num_integer::binomial;
use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::maps::nu;

/// Largest `n` accepted by the binomial bound; beyond this `C(2m, m−1)`
/// stops fitting in 128 bits.
pub const MAX_BOUND_N: u64 = 120;

/// Oracle scale cap.
pub const ORACLE_MAX: u64 = 64;

/// `n ∘ k`: the least `p` with `(x + y)^p = 0` in `F₂[x, y]/(x^n, y^k)`.
///
/// A term `x^i y^{p−i}` survives iff `C(p, i)` is odd, i.e. `i & (p − i) = 0`,
/// and it vanishes in the quotient iff `i ≥ n` or `p − i ≥ k`.
pub fn hopf_stiefel(n: u64, k: u64) -> Result<u64> {
    if n == 0 || k == 0 {
        return Err(Error::NonPositive { what: "n and k" });
    }
    let survives = |p: u64| (0..=p).any(|i| i & (p - i) == 0 && i < n && p - i < k);
    Ok((1..).find(|&p| !survives(p)).expect("(x+y)^(n+k-1) vanishes"))
}

/// `n ∘ k` by expanding `(x + y)^p` term by term over `F₂`, truncating at
/// the ideal, until nothing is left. Independent of the binomial-parity rule.
pub fn hopf_stiefel_oracle(n: u64, k: u64) -> Result<u64> {
    if n == 0 || k == 0 {
        return Err(Error::NonPositive { what: "n and k" });
    }
    if n > ORACLE_MAX || k > ORACLE_MAX {
        return Err(Error::Unsupported(format!(
            "oracle is capped at {ORACLE_MAX}, got ({n}, {k})"
        )));
    }
    let (n, k) = (n as usize, k as usize);
    // poly[i][j]: coefficient of x^i y^j
    let mut poly = vec![vec![false; k]; n];
    poly[0][0] = true;
    let mut p = 0;
    while poly.iter().flatten().any(|&c| c) {
        let mut next = vec![vec![false; k]; n];
        for i in 0..n {
            for j in 0..k {
                if poly[i][j] {
                    if i + 1 < n {
                        next[i + 1][j] ^= true;
                    }
                    if j + 1 < k {
                        next[i][j + 1] ^= true;
                    }
                }
            }
        }
        poly = next;
        p += 1;
    }
    Ok(p)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DelayBound {
    /// `C(2m, m − 1)` with `m = ⌈n/2⌉`.
    pub bound: u128,
    /// Twice the bound when `n ≡ 2 (mod 4)`.
    pub achievable_minimum: u128,
}

fn half_up(n: u64) -> u64 {
    n.div_ceil(2)
}

/// Minimal delay of maximal-rate CODs on `n` antennas.
pub fn delay_lower_bound(n: u64) -> Result<DelayBound> {
    if n < 2 {
        return Err(Error::Precondition(format!("delay bound needs n ≥ 2, got {n}")));
    }
    if n > MAX_BOUND_N {
        return Err(Error::Unsupported(format!("delay bound for n > {MAX_BOUND_N}")));
    }
    let m = u128::from(half_up(n));
    let bound = binomial(2 * m, m - 1);
    let achievable_minimum = if n % 4 == 2 { 2 * bound } else { bound };
    Ok(DelayBound {
        bound,
        achievable_minimum,
    })
}

/// Maximal COD rate `(m + 1)/(2m)`, `m = ⌈n/2⌉`.
pub fn max_rate(n: u64) -> Result<Ratio<u64>> {
    if n < 2 {
        return Err(Error::Precondition(format!("max rate needs n ≥ 2, got {n}")));
    }
    let m = half_up(n);
    Ok(Ratio::new(m + 1, 2 * m))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct N9Case {
    /// A candidate rate-½ design of size `[2x, 9, x]`.
    pub x: u64,
    /// `18 ∘ 2x`.
    pub hopf: u64,
    /// The real form has delay `4x`; it is infeasible when `18 ∘ 2x > 4x`.
    pub excluded: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct N9Minimality {
    pub cases: Vec<N9Case>,
    /// Smallest delay not excluded; 16 when every `x ≤ 7` is excluded.
    pub minimum_delay: u64,
}

impl N9Minimality {
    pub fn ok(&self) -> bool {
        self.minimum_delay == 16 && self.cases.iter().all(|c| c.excluded)
    }
}

/// A rate-½ design `[2x, 9, x]` gives a real one `[4x, 18, 2x]`, whose
/// delay must be at least `18 ∘ 2x`. Checks that this rules out `x ≤ 7`.
pub fn check_n9_minimality() -> Result<N9Minimality> {
    let mut cases = Vec::new();
    for x in 1..=7 {
        let hopf = hopf_stiefel(18, 2 * x)?;
        cases.push(N9Case {
            x,
            hopf,
            excluded: hopf > 4 * x,
        });
    }
    let minimum_delay = cases
        .iter()
        .find(|c| !c.excluded)
        .map_or(16, |c| 2 * c.x);
    Ok(N9Minimality {
        cases,
        minimum_delay,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundRow {
    pub n: u64,
    pub delay_rh: u64,
    pub delay_tjc: u64,
    pub delay_maxrate: u128,
    pub rate_half: Ratio<u64>,
    pub rate_maxrate: Ratio<u64>,
}

pub fn comparison_table(n_min: u64, n_max: u64) -> Result<Vec<BoundRow>> {
    if n_min < 2 || n_min > n_max {
        return Err(Error::Precondition(format!(
            "table range needs 2 ≤ from ≤ to, got {n_min}..{n_max}"
        )));
    }
    (n_min..=n_max)
        .map(|n| {
            let v = nu(n)?.nu;
            Ok(BoundRow {
                n,
                delay_rh: v,
                delay_tjc: 2 * v,
                delay_maxrate: delay_lower_bound(n)?.achievable_minimum,
                rate_half: Ratio::new(1, 2),
                rate_maxrate: max_rate(n)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hopf_examples() {
        assert_eq!(hopf_stiefel(10, 10).unwrap(), 16);
        assert_eq!(hopf_stiefel(18, 10).unwrap(), 26);
        assert_eq!(hopf_stiefel(1, 7).unwrap(), 7);
        assert_eq!(hopf_stiefel_oracle(2, 2).unwrap(), 2);
        assert_eq!(hopf_stiefel_oracle(18, 12).unwrap(), 28);
        assert!(hopf_stiefel_oracle(65, 1).is_err());
        assert!(hopf_stiefel(0, 3).is_err());
    }

    #[test]
    fn delay_bounds() {
        assert_eq!(delay_lower_bound(9).unwrap().bound, 210);
        let b10 = delay_lower_bound(10).unwrap();
        assert_eq!((b10.bound, b10.achievable_minimum), (210, 420));
        let b2 = delay_lower_bound(2).unwrap();
        assert_eq!((b2.bound, b2.achievable_minimum), (1, 2));
        assert!(delay_lower_bound(1).is_err());
    }

    #[test]
    fn rates() {
        assert_eq!(max_rate(5).unwrap(), Ratio::new(2, 3));
        assert_eq!(max_rate(16).unwrap(), Ratio::new(9, 16));
        assert_eq!(max_rate(2).unwrap(), Ratio::from_integer(1));
    }

    #[test]
    fn n9() {
        let r = check_n9_minimality().unwrap();
        assert!(r.ok());
        let h: Vec<u64> = r.cases[4..].iter().map(|c| c.hopf).collect();
        assert_eq!(h, [26, 28, 30]);
        assert!(r.cases[3].hopf >= 18 && r.cases[3].excluded);
    }

    #[test]
    fn table_rows() {
        let t = comparison_table(8, 13).unwrap();
        let pick = |n: u64| t.iter().find(|r| r.n == n).copied().unwrap();
        let r13 = pick(13);
        assert_eq!((r13.delay_rh, r13.delay_tjc, r13.delay_maxrate), (128, 256, 3003));
        assert_eq!(r13.rate_maxrate, Ratio::new(4, 7));
        let r11 = pick(11);
        assert_eq!((r11.delay_rh, r11.delay_tjc, r11.delay_maxrate), (64, 128, 792));
        assert_eq!(r11.rate_maxrate, Ratio::new(7, 12));
        let r8 = pick(8);
        assert_eq!((r8.delay_rh, r8.delay_tjc, r8.delay_maxrate), (8, 16, 56));
        assert_eq!(r8.rate_maxrate, Ratio::new(5, 8));
        assert!(comparison_table(5, 4).is_err());
    }
}
