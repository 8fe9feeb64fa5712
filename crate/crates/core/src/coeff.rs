//! Exact scalars `(a + b·√2) / 2^m`.
//!
//! Every entry of every design in this crate is `0`, `±1` or `±1/√2`, and the
//! Gram matrix only ever multiplies two of those together, so this ring is
//! closed under everything we need. Values are kept fully reduced, which makes
//! derived equality the same as numeric equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coefficient {
    a: i64,
    b: i64,
    m: u32,
}

impl Coefficient {
    pub const ZERO: Coefficient = Coefficient { a: 0, b: 0, m: 0 };
    pub const ONE: Coefficient = Coefficient { a: 1, b: 0, m: 0 };
    pub const MINUS_ONE: Coefficient = Coefficient { a: -1, b: 0, m: 0 };

    /// Builds `(a + b√2)/2^m` and reduces it.
    pub fn new(a: i64, b: i64, m: u32) -> Self {
        let mut c = Coefficient { a, b, m };
        c.reduce();
        c
    }

    pub fn from_int(a: i64) -> Self {
        Coefficient { a, b: 0, m: 0 }
    }

    /// `1/√2`, stored as `√2/2`.
    pub fn inv_sqrt2() -> Self {
        Coefficient { a: 0, b: 1, m: 1 }
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// `Some(±1)` when the value is `±1`.
    pub fn unit_sign(&self) -> Option<i8> {
        match (self.a, self.b, self.m) {
            (1, 0, 0) => Some(1),
            (-1, 0, 0) => Some(-1),
            _ => None,
        }
    }

    /// `Some(±1)` when the value is `±1/√2`.
    pub fn scaled_unit_sign(&self) -> Option<i8> {
        match (self.a, self.b, self.m) {
            (0, 1, 1) => Some(1),
            (0, -1, 1) => Some(-1),
            _ => None,
        }
    }

    /// Whether this is one of the four values a design entry may carry.
    pub fn is_entry_value(&self) -> bool {
        self.unit_sign().is_some() || self.scaled_unit_sign().is_some()
    }

    pub fn is_canonical(&self) -> bool {
        let mut c = *self;
        c.reduce();
        c == *self
    }

    fn reduce(&mut self) {
        if self.a == 0 && self.b == 0 {
            self.m = 0;
            return;
        }
        while self.m > 0 && self.a % 2 == 0 && self.b % 2 == 0 {
            self.a /= 2;
            self.b /= 2;
            self.m -= 1;
        }
    }

    fn lift(&self, m: u32) -> (i64, i64) {
        let s = m - self.m;
        (self.a << s, self.b << s)
    }
}

impl Add for Coefficient {
    type Output = Coefficient;

    fn add(self, rhs: Coefficient) -> Coefficient {
        let m = self.m.max(rhs.m);
        let (a1, b1) = self.lift(m);
        let (a2, b2) = rhs.lift(m);
        Coefficient::new(a1 + a2, b1 + b2, m)
    }
}

impl Neg for Coefficient {
    type Output = Coefficient;

    fn neg(self) -> Coefficient {
        Coefficient {
            a: -self.a,
            b: -self.b,
            m: self.m,
        }
    }
}

impl Sub for Coefficient {
    type Output = Coefficient;

    fn sub(self, rhs: Coefficient) -> Coefficient {
        self + (-rhs)
    }
}

impl Mul for Coefficient {
    type Output = Coefficient;

    fn mul(self, rhs: Coefficient) -> Coefficient {
        let a = self.a * rhs.a + 2 * self.b * rhs.b;
        let b = self.a * rhs.b + self.b * rhs.a;
        Coefficient::new(a, b, self.m + rhs.m)
    }
}

impl std::iter::Sum for Coefficient {
    fn sum<I: Iterator<Item = Coefficient>>(iter: I) -> Coefficient {
        iter.fold(Coefficient::ZERO, |x, y| x + y)
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(s) = self.scaled_unit_sign() {
            return write!(f, "{}1/√2", if s < 0 { "-" } else { "" });
        }
        let num = match (self.a, self.b) {
            (a, 0) => format!("{a}"),
            (0, b) => format!("{b}√2"),
            (a, b) if b < 0 => format!("({a}-{}√2)", -b),
            (a, b) => format!("({a}+{b}√2)"),
        };
        if self.m == 0 {
            write!(f, "{num}")
        } else {
            write!(f, "{num}/{}", 1u128 << self.m)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_from_squaring_inv_sqrt2() {
        let h = Coefficient::inv_sqrt2();
        assert_eq!(h * h, Coefficient::new(1, 0, 1));
    }

    #[test]
    fn additive_inverse_is_canonical_zero() {
        let z = Coefficient::from_int(1) + Coefficient::from_int(-1);
        assert_eq!(z, Coefficient::ZERO);
        assert_eq!(z.m(), 0);
    }

    #[test]
    fn one_is_multiplicative_identity() {
        let h = Coefficient::inv_sqrt2();
        assert_eq!(Coefficient::ONE * h, h);
    }

    #[test]
    fn reduction() {
        assert_eq!(Coefficient::new(4, 2, 2), Coefficient::new(2, 1, 1));
        assert_eq!(Coefficient::new(0, 0, 5), Coefficient::ZERO);
        assert_eq!(Coefficient::new(2, 0, 1), Coefficient::ONE);
        assert!(Coefficient::new(3, 2, 1).is_canonical());
    }

    #[test]
    fn display() {
        assert_eq!(Coefficient::from_int(2).to_string(), "2");
        assert_eq!(Coefficient::inv_sqrt2().to_string(), "1/√2");
        assert_eq!((-Coefficient::inv_sqrt2()).to_string(), "-1/√2");
        assert_eq!(Coefficient::new(1, 0, 1).to_string(), "1/2");
        assert_eq!(Coefficient::new(1, -3, 2).to_string(), "(1-3√2)/4");
    }
}
