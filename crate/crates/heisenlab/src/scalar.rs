//! Coordinate scalars.
//!
//! All group-algebra machinery is generic over a [`Scalar`]: exact rationals
//! (`Rat`), the quadratic field ℚ(√2) ([`crate::quad::Quad`]) used by the
//! metaplectic bases, or plain `f64` for ingesting irrational data. Exact
//! scalars decide equality with no tolerance; `f64` compares against a
//! module-level tolerance.

use std::cmp::Ordering;
use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num::{BigInt, BigRational, One, ToPrimitive, Zero};

/// Exact rational coordinate.
pub type Rat = BigRational;

/// Comparison tolerance for float-mode coordinates.
pub const FLOAT_TOL: f64 = 1e-12;

/// A coordinate scalar: a subfield of ℝ with a total order and a
/// mod-1 reduction (for phase turns).
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Whether arithmetic and equality are exact (no rounding).
    const EXACT: bool;

    fn from_i64(v: i64) -> Self;

    fn from_fraction(num: i64, den: i64) -> Self;

    fn from_rational(r: &Rat) -> Self;

    fn to_f64(&self) -> f64;

    /// Total order; for exact scalars this is the field order, for `f64`
    /// it is `f64::total_cmp`. Used to keep term maps canonical.
    fn total_cmp(&self, other: &Self) -> Ordering;

    /// `self - floor(self)`, always in `[0, 1)`.
    fn mod_one(&self) -> Self;

    /// The integer this scalar equals (exactly, or within `FLOAT_TOL` for
    /// float mode), if any.
    fn as_integer(&self) -> Option<i64>;

    /// Exact equality for exact scalars, `|a - b| <= tol` for floats.
    fn approx_eq(&self, other: &Self, tol: f64) -> bool;

    /// Parse from the textual form used in configs and CLI literals.
    fn parse_str(s: &str) -> Option<Self>;

    fn abs_f64(&self) -> f64 {
        self.to_f64().abs()
    }

    /// Pivot test for elimination: exact zero, or negligible relative to
    /// the given magnitude scale in float mode.
    fn is_negligible(&self, scale: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.abs_f64() <= FLOAT_TOL * scale.max(1.0)
        }
    }
}

impl Scalar for Rat {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        Rat::from_integer(BigInt::from(v))
    }

    fn from_fraction(num: i64, den: i64) -> Self {
        Rat::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_rational(r: &Rat) -> Self {
        r.clone()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn total_cmp(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }

    fn mod_one(&self) -> Self {
        self - self.floor()
    }

    fn as_integer(&self) -> Option<i64> {
        if self.is_integer() {
            self.to_integer().to_i64()
        } else {
            None
        }
    }

    fn approx_eq(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }

    fn parse_str(s: &str) -> Option<Self> {
        Rat::from_str(s.trim()).ok()
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_fraction(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn from_rational(r: &Rat) -> Self {
        Scalar::to_f64(r)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn total_cmp(&self, other: &Self) -> Ordering {
        f64::total_cmp(self, other)
    }

    fn mod_one(&self) -> Self {
        let m = self.rem_euclid(1.0);
        if m >= 1.0 {
            0.0
        } else {
            m
        }
    }

    fn as_integer(&self) -> Option<i64> {
        let r = self.round();
        if (self - r).abs() <= 1e-9 {
            Some(r as i64)
        } else {
            None
        }
    }

    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self - other).abs() <= tol
    }

    fn parse_str(s: &str) -> Option<Self> {
        let s = s.trim();
        if let Some(r) = Rat::parse_str(s) {
            return Some(Scalar::to_f64(&r));
        }
        f64::from_str(s).ok()
    }
}

/// Signum as an `i32`, via the total order against zero.
pub fn sign_of<S: Scalar>(v: &S) -> i32 {
    match v.total_cmp(&S::zero()) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

/// Absolute value through the total order.
pub fn abs_scalar<S: Scalar>(v: &S) -> S {
    if sign_of(v) < 0 {
        -v.clone()
    } else {
        v.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_mod_one_is_in_unit_interval() {
        let v = Rat::from_fraction(-7, 4);
        let m = v.mod_one();
        assert_eq!(m, Rat::from_fraction(1, 4));
        assert_eq!(Rat::from_fraction(9, 4).mod_one(), Rat::from_fraction(1, 4));
        assert!(Rat::from_i64(3).mod_one().is_zero());
    }

    #[test]
    fn float_mod_one_handles_negatives() {
        assert!((Scalar::mod_one(&-0.25f64) - 0.75).abs() < 1e-15);
        assert_eq!(Scalar::mod_one(&-1e-18f64), 0.0);
    }

    #[test]
    fn integer_detection() {
        assert_eq!(Rat::from_fraction(6, 3).as_integer(), Some(2));
        assert_eq!(Rat::from_fraction(1, 2).as_integer(), None);
        assert_eq!(Scalar::as_integer(&2.0000000001f64), Some(2));
        assert_eq!(Scalar::as_integer(&2.1f64), None);
    }

    #[test]
    fn parse_rational_strings() {
        assert_eq!(Rat::parse_str("3/4"), Some(Rat::from_fraction(3, 4)));
        assert_eq!(Rat::parse_str("-2"), Some(Rat::from_i64(-2)));
        assert!(Rat::parse_str("0.5").is_none());
        assert_eq!(Scalar::parse_str("0.5"), Some(0.5f64));
        assert_eq!(Scalar::parse_str("1/2"), Some(0.5f64));
    }
}
