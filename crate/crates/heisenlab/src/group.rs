//! Points of 𝒢ₙ = ℝⁿ×ℝⁿ and the twisted multiplication of their basis
//! elements ḡ in the twisted group ring:
//!
//! ```text
//! (a,b)·(x,y) = e^{2πi a·y} (a+x, b+y)
//! ```
//!
//! A product therefore returns a pair (phase, point). The inverse of a
//! basis element is normalized as ḡ⁻¹ = e^{2πi x·y}·(-x,-y) — the unique
//! choice with ḡ·ḡ⁻¹ = 1.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::phase::Phase;
use crate::scalar::Scalar;

/// A point (x, y) ∈ ℝⁿ×ℝⁿ: translation part `x`, modulation part `y`.
#[derive(Clone)]
pub struct GroupElement<S: Scalar> {
    x: Vec<S>,
    y: Vec<S>,
}

impl<S: Scalar> GroupElement<S> {
    pub fn new(x: Vec<S>, y: Vec<S>) -> Self {
        assert_eq!(x.len(), y.len(), "translation/modulation length mismatch");
        GroupElement { x, y }
    }

    pub fn identity(n: usize) -> Self {
        GroupElement { x: vec![S::zero(); n], y: vec![S::zero(); n] }
    }

    /// Build from 2n interleaved coordinates (x₁..xₙ, y₁..yₙ).
    pub fn from_flat(coords: &[S]) -> Self {
        assert!(coords.len().is_multiple_of(2));
        let n = coords.len() / 2;
        GroupElement { x: coords[..n].to_vec(), y: coords[n..].to_vec() }
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn x(&self) -> &[S] {
        &self.x
    }

    pub fn y(&self) -> &[S] {
        &self.y
    }

    /// Coordinates as a flat vector in ℝ²ⁿ: (x₁..xₙ, y₁..yₙ).
    pub fn flat(&self) -> Vec<S> {
        let mut v = self.x.clone();
        v.extend(self.y.iter().cloned());
        v
    }

    pub fn to_f64_flat(&self) -> Vec<f64> {
        self.flat().iter().map(|c| c.to_f64()).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.x.iter().chain(self.y.iter()).all(|c| c.is_zero())
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch(self.n(), other.n()));
        }
        Ok(())
    }

    /// Group addition in 𝒢ₙ (the abelian structure, no twist).
    pub fn translate(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(GroupElement {
            x: zip_with(&self.x, &other.x, |a, b| a.clone() + b.clone()),
            y: zip_with(&self.y, &other.y, |a, b| a.clone() + b.clone()),
        })
    }

    pub fn negate(&self) -> Self {
        GroupElement {
            x: self.x.iter().map(|c| -c.clone()).collect(),
            y: self.y.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.translate(&other.negate())
    }

    /// Integer multiple m·g of the point.
    pub fn scale_int(&self, m: i64) -> Self {
        let f = S::from_i64(m);
        GroupElement {
            x: self.x.iter().map(|c| c.clone() * f.clone()).collect(),
            y: self.y.iter().map(|c| c.clone() * f.clone()).collect(),
        }
    }

    /// Twisted product of basis elements: ḡ·h̄ = e^{2πi a·y}·(a+x, b+y)
    /// for g = (a,b), h = (x,y).
    pub fn product(&self, other: &Self) -> Result<(Phase<S>, Self)> {
        self.check_dim(other)?;
        let twist = dot(&self.x, &other.y);
        Ok((Phase::new(twist), self.translate(other)?))
    }

    /// Pair (phase, point) with ḡ⁻¹ = phase·(point): the basis-element
    /// inverse, normalized so that ḡ·ḡ⁻¹ = 1.
    pub fn inverse_pair(&self) -> (Phase<S>, Self) {
        let twist = dot(&self.x, &self.y);
        (Phase::new(twist), self.negate())
    }

    /// ḡᵐ as (phase, m·g), m ∈ ℤ, built by exact repeated multiplication.
    pub fn pow_with_phase(&self, m: i64) -> (Phase<S>, Self) {
        let n = self.n();
        let mut phase = Phase::zero();
        let mut point = GroupElement::identity(n);
        if m >= 0 {
            for _ in 0..m {
                let (t, p) = point.product(self).expect("same dimension");
                phase = phase.add(&t);
                point = p;
            }
        } else {
            let (inv_phase, inv_point) = self.inverse_pair();
            for _ in 0..(-m) {
                let (t, p) = point.product(&inv_point).expect("same dimension");
                phase = phase.add(&t).add(&inv_phase);
                point = p;
            }
        }
        (phase, point)
    }

    /// Coordinatewise comparison with tolerance (exact scalars ignore it).
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.n() == other.n()
            && self
                .flat()
                .iter()
                .zip(other.flat().iter())
                .all(|(a, b)| a.approx_eq(b, tol))
    }

    /// Map coordinates into another scalar type.
    pub fn map_scalar<T: Scalar>(&self, f: impl Fn(&S) -> T) -> GroupElement<T> {
        GroupElement {
            x: self.x.iter().map(&f).collect(),
            y: self.y.iter().map(&f).collect(),
        }
    }
}

/// Dot product over the scalar field.
pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b.iter())
        .fold(S::zero(), |acc, (u, v)| acc + u.clone() * v.clone())
}

fn zip_with<S: Scalar>(a: &[S], b: &[S], f: impl Fn(&S, &S) -> S) -> Vec<S> {
    a.iter().zip(b.iter()).map(|(u, v)| f(u, v)).collect()
}

// Canonical total order so points can key term maps. For floats this is
// the IEEE total order; tolerance-based comparisons go through approx_eq.
impl<S: Scalar> PartialEq for GroupElement<S> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<S: Scalar> Eq for GroupElement<S> {}

impl<S: Scalar> PartialOrd for GroupElement<S> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<S: Scalar> Ord for GroupElement<S> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n()
            .cmp(&other.n())
            .then_with(|| cmp_slices(&self.x, &other.x))
            .then_with(|| cmp_slices(&self.y, &other.y))
    }
}

fn cmp_slices<S: Scalar>(a: &[S], b: &[S]) -> Ordering {
    for (u, v) in a.iter().zip(b.iter()) {
        match u.total_cmp(v) {
            Ordering::Equal => continue,
            ord => return ord,
        }
    }
    Ordering::Equal
}

impl<S: Scalar> fmt::Debug for GroupElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<S: Scalar> fmt::Display for GroupElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[S]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
        if self.n() == 1 {
            write!(f, "({},{})", self.x[0], self.y[0])
        } else {
            write!(f, "({};{})", join(&self.x), join(&self.y))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;

    fn ge(x: i64, y: i64) -> GroupElement<Rat> {
        GroupElement::new(vec![Rat::from_i64(x)], vec![Rat::from_i64(y)])
    }

    fn ge_q(x: (i64, i64), y: (i64, i64)) -> GroupElement<Rat> {
        GroupElement::new(
            vec![Rat::from_fraction(x.0, x.1)],
            vec![Rat::from_fraction(y.0, y.1)],
        )
    }

    #[test]
    fn twist_rule_direct_substitution() {
        // (1/2, 0)·(0, 1) = e^{2πi·(1/2·1)}·(1/2, 1) = -(1/2, 1)
        let g = ge_q((1, 2), (0, 1));
        let h = ge(0, 1);
        let (phase, prod) = g.product(&h).unwrap();
        assert_eq!(phase.turn(), &Rat::from_fraction(1, 2));
        assert_eq!(prod, ge_q((1, 2), (1, 1)));
    }

    #[test]
    fn identity_is_neutral() {
        let id = GroupElement::<Rat>::identity(1);
        let h = ge_q((3, 7), (-2, 5));
        let (phase, prod) = id.product(&h).unwrap();
        assert!(phase.is_zero());
        assert_eq!(prod, h);
    }

    #[test]
    fn associativity_with_exact_phase_accumulation() {
        // ((1,2)·(3,4))·(5,6) vs (1,2)·((3,4)·(5,6)) — phases compared as
        // exact accumulated turns, elements exactly.
        let a = ge(1, 2);
        let b = ge(3, 4);
        let c = ge(5, 6);
        let (t_ab, ab) = a.product(&b).unwrap();
        let (t_abc_l, abc_l) = ab.product(&c).unwrap();
        let left = (t_ab.add(&t_abc_l), abc_l);
        let (t_bc, bc) = b.product(&c).unwrap();
        let (t_abc_r, abc_r) = a.product(&bc).unwrap();
        let right = (t_bc.add(&t_abc_r), abc_r);
        assert_eq!(left.0.turn(), right.0.turn());
        assert_eq!(left.1, right.1);
    }

    #[test]
    fn inverse_solves_unit_equation() {
        for g in [ge_q((1, 2), (1, 1)), ge(0, 0), ge_q((-4, 3), (0, 1))] {
            let (inv_phase, inv) = g.inverse_pair();
            let (prod_phase, prod) = g.product(&inv).unwrap();
            // ḡ·ḡ⁻¹ = e^{2πi(prod_phase + inv_phase)}·(0,0) must be 1
            assert!(prod.is_identity());
            assert!(prod_phase.add(&inv_phase).is_zero());
        }
        // (1/2, 1): inverse carries phase turn 1/2 on (-1/2, -1)
        let (p, e) = ge_q((1, 2), (1, 1)).inverse_pair();
        assert_eq!(p.turn(), &Rat::from_fraction(1, 2));
        assert_eq!(e, ge_q((-1, 2), (-1, 1)));
        // (x, 0): phase-free inverse
        let (p, _) = ge_q((7, 3), (0, 1)).inverse_pair();
        assert!(p.is_zero());
    }

    #[test]
    fn powers_match_repeated_products() {
        let g = ge_q((1, 2), (2, 3));
        let (p3, e3) = g.pow_with_phase(3);
        // ḡ³ = e^{2πi·3·(x·y)}·(3g); here 3·x·y = 3·(1/3) ≡ 0 mod 1
        assert_eq!(e3, g.scale_int(3));
        assert!(p3.is_zero());
        // negative power inverts exactly
        let (pm, em) = g.pow_with_phase(-2);
        let (pp, ep) = g.pow_with_phase(2);
        let (tc, comp) = ep.product(&em).unwrap();
        assert!(comp.is_identity());
        assert!(pp.add(&pm).add(&tc).is_zero());
    }
}
