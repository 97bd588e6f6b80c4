//! The symplectic form β((a,b),(c,d)) = a·d − b·c on 𝒢ₙ ≅ ℝ²ⁿ and the
//! commutation solver: given commuting constraints β(y,hᵢ) = 0 and a
//! target β(y,x) = t, produce y with ȳh̄ᵢȳ⁻¹ = h̄ᵢ and ȳx̄ȳ⁻¹ = e^{2πit}x̄.

use crate::error::{Error, Result};
use crate::group::{dot, GroupElement};
use crate::linalg::Mat;
use crate::phase::Phase;
use crate::scalar::Scalar;

/// β(u, v) = u.x·v.y − u.y·v.x.
pub fn form_beta<S: Scalar>(u: &GroupElement<S>, v: &GroupElement<S>) -> Result<S> {
    if u.n() != v.n() {
        return Err(Error::DimensionMismatch(u.n(), v.n()));
    }
    Ok(dot(u.x(), v.y()) - dot(u.y(), v.x()))
}

/// Phase of ḡh̄ḡ⁻¹ = e^{2πiβ(g,h)}·h̄.
pub fn conjugation_phase<S: Scalar>(
    g: &GroupElement<S>,
    h: &GroupElement<S>,
) -> Result<Phase<S>> {
    Ok(Phase::new(form_beta(g, h)?))
}

/// The linear functional y ↦ β(y, v) as a row vector over the flat
/// coordinates (y_x, y_y): β(y, (c,d)) = y_x·d − y_y·c.
fn beta_row<S: Scalar>(v: &GroupElement<S>) -> Vec<S> {
    let mut row: Vec<S> = v.y().to_vec();
    row.extend(v.x().iter().map(|c| -c.clone()));
    row
}

/// Solve β(y, hᵢ) = 0 for all i and β(y, x) = t; the minimum-Euclidean-
/// norm solution of the underdetermined system is returned, so the result
/// is deterministic. Requires {h₁,…,h_m, x} linearly independent over ℝ.
pub fn solve_commutation<S: Scalar>(
    h_gens: &[GroupElement<S>],
    x: &GroupElement<S>,
    t: &S,
) -> Result<GroupElement<S>> {
    let n = x.n();
    for h in h_gens {
        if h.n() != n {
            return Err(Error::DimensionMismatch(h.n(), n));
        }
    }
    if h_gens.len() + 1 > 2 * n {
        return Err(Error::DependentGenerators);
    }
    let vectors = Mat::from_columns(
        h_gens.iter().chain(std::iter::once(x)).map(|g| g.flat()).collect(),
    );
    if vectors.rank() != h_gens.len() + 1 {
        return Err(Error::DependentGenerators);
    }
    let rows: Vec<Vec<S>> = h_gens
        .iter()
        .chain(std::iter::once(x))
        .map(beta_row)
        .collect();
    let system = Mat::from_rows(rows);
    let mut rhs = vec![S::zero(); h_gens.len()];
    rhs.push(t.clone());
    let y = system
        .min_norm_solve(&rhs)
        .ok_or_else(|| Error::Internal("nondegenerate form yielded singular normal equations".into()))?;
    Ok(GroupElement::from_flat(&y))
}
