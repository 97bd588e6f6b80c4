//! Discrete subgroups of 𝒢ₙ ≅ ℝ²ⁿ, given by an ℝ-linearly independent
//! generator list (a ℤ-basis). Independence over ℝ is exactly what makes
//! a finitely generated subgroup of ℝ²ⁿ discrete.

use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::linalg::Mat;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteSubgroup<S: Scalar> {
    n: usize,
    generators: Vec<GroupElement<S>>,
}

/// Integer coordinates exhibiting a point as a ℤ-combination of the
/// generators. `certified` is false in float mode, where the solve is
/// tolerance-based.
#[derive(Clone, Debug, PartialEq)]
pub struct MemberWitness {
    pub coeffs: Vec<i64>,
    pub certified: bool,
}

impl<S: Scalar> DiscreteSubgroup<S> {
    pub fn new(n: usize, generators: Vec<GroupElement<S>>) -> Result<Self> {
        for g in &generators {
            if g.n() != n {
                return Err(Error::DimensionMismatch(g.n(), n));
            }
        }
        if generators.len() > 2 * n {
            return Err(Error::DependentGenerators);
        }
        let sg = DiscreteSubgroup { n, generators };
        if sg.rank() > 0 && sg.generator_matrix().rank() != sg.rank() {
            return Err(Error::DependentGenerators);
        }
        Ok(sg)
    }

    /// The trivial subgroup {0}.
    pub fn trivial(n: usize) -> Self {
        DiscreteSubgroup { n, generators: Vec::new() }
    }

    /// The full integer lattice ℤⁿ×ℤⁿ.
    pub fn standard_lattice(n: usize) -> Self {
        let mut gens = Vec::new();
        for i in 0..2 * n {
            let mut flat = vec![S::zero(); 2 * n];
            flat[i] = S::one();
            gens.push(GroupElement::from_flat(&flat));
        }
        DiscreteSubgroup { n, generators: gens }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[GroupElement<S>] {
        &self.generators
    }

    /// 2n×r matrix whose columns are the generators.
    pub fn generator_matrix(&self) -> Mat<S> {
        Mat::from_columns(self.generators.iter().map(|g| g.flat()).collect())
    }

    /// Solve Σ mᵢ·gᵢ = g over the field, then check the coefficients are
    /// integers. Exact generators give a certified answer; float mode
    /// rounds within tolerance and flags the witness as non-certified.
    pub fn member(&self, g: &GroupElement<S>) -> Result<Option<MemberWitness>> {
        if g.n() != self.n {
            return Err(Error::DimensionMismatch(g.n(), self.n));
        }
        if self.rank() == 0 {
            return Ok(if g.is_identity() {
                Some(MemberWitness { coeffs: vec![], certified: S::EXACT })
            } else {
                None
            });
        }
        let m = self.generator_matrix();
        let sol = match m.solve(&g.flat()) {
            None => return Ok(None),
            Some(s) => s,
        };
        let mut coeffs = Vec::with_capacity(sol.len());
        for c in &sol {
            match c.as_integer() {
                Some(k) => coeffs.push(k),
                None => return Ok(None),
            }
        }
        Ok(Some(MemberWitness { coeffs, certified: S::EXACT }))
    }

    /// The lattice point with the given integer coordinates.
    pub fn point(&self, coeffs: &[i64]) -> GroupElement<S> {
        assert_eq!(coeffs.len(), self.rank());
        let mut acc = GroupElement::identity(self.n);
        for (m, g) in coeffs.iter().zip(self.generators.iter()) {
            acc = acc.translate(&g.scale_int(*m)).expect("same dimension");
        }
        acc
    }

    pub fn map_scalar<T: Scalar>(&self, f: impl Fn(&S) -> T + Copy) -> DiscreteSubgroup<T> {
        DiscreteSubgroup {
            n: self.n,
            generators: self.generators.iter().map(|g| g.map_scalar(f)).collect(),
        }
    }
}
