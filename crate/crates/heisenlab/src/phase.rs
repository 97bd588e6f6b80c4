//! Unimodular phases stored as turns (angle / 2π) in `[0, 1)`.
//!
//! Exact turns compose with no drift; the complex value `e^{2πi·turn}` is
//! only materialized when a coefficient needs it. Quarter turns map to
//! exact `±1`, `±i`.

use std::fmt;

use num_complex::Complex64;

use crate::scalar::Scalar;

#[derive(Clone, PartialEq)]
pub struct Phase<S: Scalar> {
    turn: S,
}

impl<S: Scalar> Phase<S> {
    /// Reduce an arbitrary scalar mod 1.
    pub fn new(turn: S) -> Self {
        Phase { turn: turn.mod_one() }
    }

    pub fn zero() -> Self {
        Phase { turn: S::zero() }
    }

    pub fn half() -> Self {
        Phase { turn: S::from_fraction(1, 2) }
    }

    pub fn turn(&self) -> &S {
        &self.turn
    }

    pub fn is_zero(&self) -> bool {
        self.turn.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        Phase::new(self.turn.clone() + other.turn.clone())
    }

    pub fn neg(&self) -> Self {
        Phase::new(-self.turn.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// `i`-fold repetition of the turn.
    pub fn scale_int(&self, i: i64) -> Self {
        Phase::new(self.turn.clone() * S::from_i64(i))
    }

    /// `e^{2πi·turn}` with quarter turns exact.
    pub fn value(&self) -> Complex64 {
        let quarter = self.turn.clone() * S::from_i64(4);
        if let Some(q) = quarter.as_integer() {
            match q.rem_euclid(4) {
                0 => return Complex64::new(1.0, 0.0),
                1 => return Complex64::new(0.0, 1.0),
                2 => return Complex64::new(-1.0, 0.0),
                3 => return Complex64::new(0.0, -1.0),
                _ => unreachable!(),
            }
        }
        let angle = 2.0 * std::f64::consts::PI * self.turn.to_f64();
        Complex64::new(angle.cos(), angle.sin())
    }
}

impl<S: Scalar> fmt::Debug for Phase<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "turn {}", self.turn)
    }
}

impl<S: Scalar> fmt::Display for Phase<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "turn {}", self.turn)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;

    #[test]
    fn quarter_turns_are_exact() {
        let half = Phase::new(Rat::from_fraction(1, 2));
        assert_eq!(half.value(), Complex64::new(-1.0, 0.0));
        let q = Phase::new(Rat::from_fraction(1, 4));
        assert_eq!(q.value(), Complex64::new(0.0, 1.0));
        let tq = Phase::new(Rat::from_fraction(-1, 4));
        assert_eq!(tq.value(), Complex64::new(0.0, -1.0));
        assert_eq!(Phase::<Rat>::zero().value(), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn composition_is_exact_mod_one() {
        let a = Phase::new(Rat::from_fraction(2, 3));
        let b = Phase::new(Rat::from_fraction(2, 3));
        assert_eq!(a.add(&b).turn(), &Rat::from_fraction(1, 3));
        assert_eq!(a.scale_int(3).turn(), &Rat::from_i64(0));
        assert_eq!(a.neg().turn(), &Rat::from_fraction(1, 3));
        assert!(a.add(&a.neg()).is_zero());
    }
}
