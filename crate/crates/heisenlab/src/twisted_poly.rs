//! Skew (twisted) Laurent polynomials over ℂ*H along a splitting
//! G = H ⊕ ℤ·x: an element of ℂ*G is written Σᵢ αᵢ·x̄ⁱ with αᵢ ∈ ℂ*H,
//! multiplication twists the right factor by σ(β) = x̄βx̄⁻¹, and the
//! ζ-twist αᵢ ↦ ζⁱαᵢ is realized by conjugation with a solution of the
//! symplectic commutation system.

use std::collections::BTreeMap;

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::linalg::Mat;
use crate::phase::Phase;
use crate::scalar::Scalar;
use crate::subgroup::DiscreteSubgroup;

/// A splitting of a discrete subgroup: H ⊲ G with G/H infinite cyclic
/// and a coset generator x, so that H's generators together with x form
/// a ℤ-basis of G.
#[derive(Clone, Debug, PartialEq)]
pub struct SubgroupSplitting<S: Scalar> {
    group: DiscreteSubgroup<S>,
    subgroup: DiscreteSubgroup<S>,
    coset_gen: GroupElement<S>,
}

impl<S: Scalar> SubgroupSplitting<S> {
    pub fn new(
        group: DiscreteSubgroup<S>,
        subgroup: DiscreteSubgroup<S>,
        coset_gen: GroupElement<S>,
    ) -> Result<Self> {
        if !S::EXACT {
            return Err(Error::InexactMode);
        }
        if subgroup.n() != group.n() || coset_gen.n() != group.n() {
            return Err(Error::DimensionMismatch(subgroup.n(), group.n()));
        }
        if subgroup.rank() + 1 != group.rank() {
            return Err(Error::DependentGenerators);
        }
        // (H generators, x) written in G's ℤ-basis must be unimodular.
        let mut columns: Vec<Vec<S>> = Vec::new();
        for g in subgroup.generators().iter().chain(std::iter::once(&coset_gen)) {
            let w = group
                .member(g)?
                .ok_or_else(|| Error::SupportOutsideSubgroup(g.to_string()))?;
            columns.push(w.coeffs.iter().map(|&m| S::from_i64(m)).collect());
        }
        let m = Mat::from_columns(columns);
        let det = m.det();
        let is_unit = det.as_integer().is_some_and(|d| d == 1 || d == -1);
        if !is_unit {
            return Err(Error::DependentGenerators);
        }
        Ok(SubgroupSplitting { group, subgroup, coset_gen })
    }

    pub fn group(&self) -> &DiscreteSubgroup<S> {
        &self.group
    }

    pub fn subgroup(&self) -> &DiscreteSubgroup<S> {
        &self.subgroup
    }

    pub fn coset_gen(&self) -> &GroupElement<S> {
        &self.coset_gen
    }

    /// Unique decomposition g = h + i·x with h ∈ H: returns (i, h).
    pub fn decompose_point(&self, g: &GroupElement<S>) -> Result<(i64, GroupElement<S>)> {
        let w = self
            .group
            .member(g)?
            .ok_or_else(|| Error::SupportOutsideSubgroup(g.to_string()))?;
        // Coordinates in G's basis, re-expressed in the (H gens, x) basis.
        let mut columns: Vec<Vec<S>> = Vec::new();
        for b in self.subgroup.generators().iter().chain(std::iter::once(&self.coset_gen)) {
            let wb = self.group.member(b)?.expect("validated basis member");
            columns.push(wb.coeffs.iter().map(|&m| S::from_i64(m)).collect());
        }
        let m = Mat::from_columns(columns);
        let rhs: Vec<S> = w.coeffs.iter().map(|&c| S::from_i64(c)).collect();
        let sol = m.solve(&rhs).ok_or_else(|| {
            Error::Internal("unimodular basis failed to express a member".into())
        })?;
        let degree = sol
            .last()
            .and_then(|c| c.as_integer())
            .ok_or_else(|| Error::Internal("non-integer coset degree".into()))?;
        let h = g.sub(&self.coset_gen.scale_int(degree))?;
        Ok((degree, h))
    }
}

/// Finite Laurent polynomial Σᵢ αᵢ·Xⁱ with αᵢ ∈ ℂ*H; negative degrees
/// are allowed.
#[derive(Clone, Debug)]
pub struct TwistedPoly<S: Scalar> {
    splitting: SubgroupSplitting<S>,
    coeffs: BTreeMap<i64, AlgebraElement<S>>,
}

impl<S: Scalar> TwistedPoly<S> {
    pub fn zero(splitting: SubgroupSplitting<S>) -> Self {
        TwistedPoly { splitting, coeffs: BTreeMap::new() }
    }

    pub fn splitting(&self) -> &SubgroupSplitting<S> {
        &self.splitting
    }

    pub fn coefficient(&self, degree: i64) -> Option<&AlgebraElement<S>> {
        self.coeffs.get(&degree)
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    fn insert(&mut self, degree: i64, coeff: AlgebraElement<S>) -> Result<()> {
        if coeff.is_zero() {
            return Ok(());
        }
        match self.coeffs.remove(&degree) {
            None => {
                self.coeffs.insert(degree, coeff);
            }
            Some(prev) => {
                let sum = prev.add(&coeff)?;
                if !sum.is_zero() {
                    self.coeffs.insert(degree, sum);
                }
            }
        }
        Ok(())
    }

    /// σᵐ applied to a coefficient: conjugation by x̄ᵐ, computed through
    /// the group element m·x (the basis phases cancel).
    pub fn sigma(&self, m: i64, beta: &AlgebraElement<S>) -> Result<AlgebraElement<S>> {
        beta.conjugate_by(&self.splitting.coset_gen.scale_int(m))
    }

    /// Skew-convolution product: Σₙ (Σ_{i+j=n} aᵢ·σⁱ(bⱼ))·Xⁿ.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.splitting != other.splitting {
            return Err(Error::SplittingMismatch);
        }
        let mut out = TwistedPoly::zero(self.splitting.clone());
        for (&i, a) in &self.coeffs {
            for (&j, b) in &other.coeffs {
                let twisted = self.sigma(i, b)?;
                out.insert(i + j, a.mul(&twisted)?)?;
            }
        }
        Ok(out)
    }

    /// ζ-twist: degree-i coefficient multiplied by e^{2πi·i·t}.
    pub fn zeta_twist(&self, t: &S) -> Self {
        let turn = Phase::new(t.clone());
        let mut out = TwistedPoly::zero(self.splitting.clone());
        for (&i, a) in &self.coeffs {
            out.coeffs.insert(i, a.scale_phase(&turn.scale_int(i)));
        }
        out
    }

    /// Multiply by Xᵐ on the left: degrees shift by m and coefficients
    /// are twisted, xᵐ·(αᵢxⁱ) = σᵐ(αᵢ)·x^{m+i}. `left_shift` with the
    /// negated minimal degree normalizes a Laurent polynomial to
    /// nonnegative degrees without mutating the original.
    pub fn left_shift(&self, m: i64) -> Result<Self> {
        let mut out = TwistedPoly::zero(self.splitting.clone());
        for (&i, a) in &self.coeffs {
            out.coeffs.insert(i + m, self.sigma(m, a)?);
        }
        Ok(out)
    }

    /// Evaluate back into ℂ*G: Σᵢ αᵢ·x̄ⁱ.
    pub fn recompose(&self) -> Result<AlgebraElement<S>> {
        let n = self.splitting.group.n();
        let mut acc = AlgebraElement::zero(n);
        for (&i, a) in &self.coeffs {
            let (phase, point) = self.splitting.coset_gen.pow_with_phase(i);
            let xi = AlgebraElement::monomial_phased(
                point,
                crate::algebra::PhasedCoeff::new(num_complex::Complex64::new(1.0, 0.0), phase),
            );
            acc = acc.add(&a.mul(&xi)?)?;
        }
        Ok(acc)
    }
}

/// Write α ∈ ℂ*G as a twisted Laurent polynomial: the degree-i
/// coefficient collects the terms in the coset H + i·x, right-divided by
/// x̄ⁱ with exact phase tracking.
pub fn decompose<S: Scalar>(
    alpha: &AlgebraElement<S>,
    splitting: &SubgroupSplitting<S>,
) -> Result<TwistedPoly<S>> {
    let mut out = TwistedPoly::zero(splitting.clone());
    for (g, coeff) in alpha.terms() {
        let (degree, _h) = splitting.decompose_point(g)?;
        let (phase, point) = splitting.coset_gen.pow_with_phase(degree);
        // (x̄ⁱ)⁻¹ = e^{-2πi·phase}·(point)⁻¹
        let inv = AlgebraElement::basis_inverse(&point).scale_phase(&phase.neg());
        let term = AlgebraElement::monomial_phased(g.clone(), coeff.clone());
        out.insert(degree, term.mul(&inv)?)?;
    }
    Ok(out)
}
