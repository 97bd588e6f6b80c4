//! Exact arithmetic in the real quadratic field ℚ(√2).
//!
//! The metaplectic bases involve 1/√2, so lattice membership and cube
//! disjointness checks happen here instead of over plain rationals. An
//! element is stored as `a + b·√2` with `a, b ∈ ℚ`; comparisons against
//! zero are decided exactly by comparing `a²` with `2b²`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num::{BigInt, One, Signed, Zero};

use crate::scalar::{Rat, Scalar};

pub const SQRT2: f64 = std::f64::consts::SQRT_2;

/// `a + b·√2` with exact rational parts.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Quad {
    pub a: Rat,
    pub b: Rat,
}

impl Quad {
    pub fn new(a: Rat, b: Rat) -> Self {
        Quad { a, b }
    }

    pub fn from_rat(a: Rat) -> Self {
        Quad { a, b: Rat::zero() }
    }

    /// √2 itself.
    pub fn sqrt2() -> Self {
        Quad { a: Rat::zero(), b: Rat::one() }
    }

    /// 1/√2 = √2/2.
    pub fn inv_sqrt2() -> Self {
        Quad { a: Rat::zero(), b: Rat::from_fraction(1, 2) }
    }

    /// Galois conjugate `a - b·√2`.
    pub fn conjugate(&self) -> Self {
        Quad { a: self.a.clone(), b: -self.b.clone() }
    }

    /// Exact sign: -1, 0 or +1.
    pub fn sign(&self) -> i32 {
        let sa = rat_sign(&self.a);
        let sb = rat_sign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        if sa == sb {
            return sa;
        }
        // Opposite signs: compare a² with 2b² (equality impossible since
        // √2 is irrational and both parts are nonzero).
        let a2 = &self.a * &self.a;
        let b2 = Rat::from_i64(2) * &self.b * &self.b;
        match a2.cmp(&b2) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    /// Exact floor as a big integer.
    pub fn floor_int(&self) -> BigInt {
        let mut m = BigInt::from(Scalar::to_f64(self).floor() as i64);
        // f64 seeding can be off by a few units; correct exactly.
        while self.cmp_int(&m) == Ordering::Less {
            m -= 1;
        }
        loop {
            let next = &m + 1;
            if self.cmp_int(&next) != Ordering::Less {
                m = next;
            } else {
                break;
            }
        }
        m
    }

    fn cmp_int(&self, m: &BigInt) -> Ordering {
        let diff = self.clone() - Quad::from_rat(Rat::from_integer(m.clone()));
        match diff.sign() {
            s if s < 0 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn inverse(&self) -> Quad {
        // (a + b√2)⁻¹ = (a - b√2) / (a² - 2b²)
        let denom = &self.a * &self.a - Rat::from_i64(2) * &self.b * &self.b;
        assert!(!denom.is_zero(), "division by zero in Q(sqrt2)");
        Quad { a: &self.a / &denom, b: -(&self.b / &denom) }
    }
}

fn rat_sign(r: &Rat) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl Add for Quad {
    type Output = Quad;
    fn add(self, rhs: Quad) -> Quad {
        Quad { a: self.a + rhs.a, b: self.b + rhs.b }
    }
}

impl Sub for Quad {
    type Output = Quad;
    fn sub(self, rhs: Quad) -> Quad {
        Quad { a: self.a - rhs.a, b: self.b - rhs.b }
    }
}

impl Mul for Quad {
    type Output = Quad;
    fn mul(self, rhs: Quad) -> Quad {
        // (a + b√2)(c + d√2) = ac + 2bd + (ad + bc)√2
        let a = &self.a * &rhs.a + Rat::from_i64(2) * &self.b * &rhs.b;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        Quad { a, b }
    }
}

impl Div for Quad {
    type Output = Quad;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Quad) -> Quad {
        self * rhs.inverse()
    }
}

impl Neg for Quad {
    type Output = Quad;
    fn neg(self) -> Quad {
        Quad { a: -self.a, b: -self.b }
    }
}

impl Zero for Quad {
    fn zero() -> Self {
        Quad { a: Rat::zero(), b: Rat::zero() }
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for Quad {
    fn one() -> Self {
        Quad { a: Rat::one(), b: Rat::zero() }
    }
}

impl fmt::Debug for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            if self.b.is_negative() {
                return write!(f, "-{}*sqrt2", -self.b.clone());
            }
            return write!(f, "{}*sqrt2", self.b);
        }
        if self.b.is_negative() {
            write!(f, "{}-{}*sqrt2", self.a, -self.b.clone())
        } else {
            write!(f, "{}+{}*sqrt2", self.a, self.b)
        }
    }
}

impl FromStr for Quad {
    type Err = String;

    /// Accepts `p/q`, `p/q+r/s*sqrt2`, `p/q-r/s*sqrt2`, `r/s*sqrt2`.
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let bad = || format!("invalid Q(sqrt2) literal: {s:?}");
        match s.find("*sqrt2") {
            None => {
                let a = Rat::from_str(s).map_err(|_| bad())?;
                Ok(Quad::from_rat(a))
            }
            Some(pos) => {
                if pos + "*sqrt2".len() != s.len() {
                    return Err(bad());
                }
                let head = &s[..pos];
                // Split off the rational part: last top-level '+'/'-' that
                // is not a leading sign of the b coefficient.
                let mut split = None;
                for (i, c) in head.char_indices().skip(1) {
                    if c == '+' || c == '-' {
                        split = Some(i);
                    }
                }
                match split {
                    None => {
                        let b = Rat::from_str(head).map_err(|_| bad())?;
                        Ok(Quad::new(Rat::zero(), b))
                    }
                    Some(i) => {
                        let a = Rat::from_str(&head[..i]).map_err(|_| bad())?;
                        let sign = if head.as_bytes()[i] == b'-' { -1 } else { 1 };
                        let b = Rat::from_str(&head[i + 1..]).map_err(|_| bad())?;
                        Ok(Quad::new(a, Rat::from_i64(sign) * b))
                    }
                }
            }
        }
    }
}

impl Scalar for Quad {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        Quad::from_rat(Rat::from_i64(v))
    }

    fn from_fraction(num: i64, den: i64) -> Self {
        Quad::from_rat(Rat::from_fraction(num, den))
    }

    fn from_rational(r: &Rat) -> Self {
        Quad::from_rat(r.clone())
    }

    fn to_f64(&self) -> f64 {
        Scalar::to_f64(&self.a) + Scalar::to_f64(&self.b) * SQRT2
    }

    fn total_cmp(&self, other: &Self) -> Ordering {
        let diff = self.clone() - other.clone();
        match diff.sign() {
            s if s < 0 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }

    fn mod_one(&self) -> Self {
        let fl = Quad::from_rat(Rat::from_integer(self.floor_int()));
        self.clone() - fl
    }

    fn as_integer(&self) -> Option<i64> {
        if !self.b.is_zero() {
            return None;
        }
        Scalar::as_integer(&self.a)
    }

    fn approx_eq(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }

    fn parse_str(s: &str) -> Option<Self> {
        Quad::from_str(s).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: (i64, i64), b: (i64, i64)) -> Quad {
        Quad::new(Rat::from_fraction(a.0, a.1), Rat::from_fraction(b.0, b.1))
    }

    #[test]
    fn sign_decides_close_calls_exactly() {
        // 99/70 is a convergent of √2 from above: 99/70 - √2 > 0
        let v = q((99, 70), (-1, 1));
        assert_eq!(v.sign(), 1);
        // 140/99 < √2
        let w = q((140, 99), (-1, 1));
        assert_eq!(w.sign(), -1);
        assert_eq!(Quad::zero().sign(), 0);
        assert_eq!(q((0, 1), (-3, 5)).sign(), -1);
    }

    #[test]
    fn field_axioms_spot_checks() {
        let x = q((1, 2), (3, 4));
        let y = q((-2, 3), (1, 5));
        let prod = x.clone() * y.clone();
        let back = prod / y.clone();
        assert_eq!(back, x);
        let inv = Quad::one() / Quad::sqrt2();
        assert_eq!(inv, Quad::inv_sqrt2());
    }

    #[test]
    fn floor_and_mod_one() {
        // √2 ≈ 1.414: floor 1
        assert_eq!(Quad::sqrt2().floor_int(), BigInt::from(1));
        // -√2 ≈ -1.414: floor -2
        let m = (-Quad::sqrt2()).floor_int();
        assert_eq!(m, BigInt::from(-2));
        let r = (-Quad::sqrt2()).mod_one();
        // -√2 + 2 = 2 - √2 ∈ [0,1)
        assert_eq!(r, q((2, 1), (-1, 1)));
        assert_eq!(r.sign(), 1);
    }

    #[test]
    fn display_roundtrip() {
        for v in [
            q((1, 2), (0, 1)),
            q((0, 1), (-1, 2)),
            q((-3, 4), (5, 7)),
            q((2, 1), (-1, 1)),
            Quad::zero(),
        ] {
            let s = v.to_string();
            let back = Quad::from_str(&s).unwrap();
            assert_eq!(back, v, "roundtrip failed for {s}");
        }
    }
}
