//! The support-shrinking procedure behind simplicity of ℂ*𝒢ₙ, made
//! algorithmic: a nonzero element is driven to the ring unit by
//! ideal-preserving moves, and the move list is returned as a replayable
//! certificate.
//!
//! Moves: left-multiplication by ḡ⁻¹ (puts 1 into the support), the
//! conjugate-and-subtract step α ← ȳαȳ⁻¹ − α (kills the identity
//! coefficient exactly, keeps the targeted element with multiplier
//! e^{2πi·β(y,a)} − 1 = −2 for the half-turn target), and one final
//! scalar normalization.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::scalar::{Rat, Scalar};
use crate::symplectic::solve_commutation;

#[derive(Clone, Debug)]
pub enum ReduceMove<S: Scalar> {
    /// α ← ḡ⁻¹·α
    LeftMulInverse(GroupElement<S>),
    /// α ← ȳαȳ⁻¹ − α
    ConjugateSubtract(GroupElement<S>),
    /// α ← λ·α
    Scale(Complex64),
}

#[derive(Clone, Debug)]
pub struct ReduceCertificate<S: Scalar> {
    pub moves: Vec<ReduceMove<S>>,
}

impl<S: Scalar> ReduceCertificate<S> {
    /// Apply one move through the public algebra operations.
    pub fn apply_move(m: &ReduceMove<S>, alpha: &AlgebraElement<S>) -> Result<AlgebraElement<S>> {
        match m {
            ReduceMove::LeftMulInverse(g) => {
                AlgebraElement::basis_inverse(g).mul(alpha)
            }
            ReduceMove::ConjugateSubtract(y) => alpha.conjugate_by(y)?.sub(alpha),
            ReduceMove::Scale(c) => Ok(alpha.scale(*c)),
        }
    }

    /// Replay the certificate on an input, returning the final element.
    pub fn replay(&self, alpha: &AlgebraElement<S>) -> Result<AlgebraElement<S>> {
        let mut cur = alpha.clone();
        for m in &self.moves {
            cur = Self::apply_move(m, &cur)?;
        }
        Ok(cur)
    }

    /// Replay, returning every intermediate state (input first).
    pub fn replay_trace(&self, alpha: &AlgebraElement<S>) -> Result<Vec<AlgebraElement<S>>> {
        let mut states = vec![alpha.clone()];
        for m in &self.moves {
            let next = Self::apply_move(m, states.last().unwrap())?;
            states.push(next);
        }
        Ok(states)
    }
}

/// Reduce a nonzero exact element to the ring unit; the returned move
/// list has length ≤ 2·|supp α| and every conjugate-subtract strictly
/// shrinks the support.
pub fn reduce_to_unit<S: Scalar>(alpha: &AlgebraElement<S>) -> Result<ReduceCertificate<S>> {
    if !S::EXACT {
        return Err(Error::InexactMode);
    }
    if alpha.is_zero() {
        return Err(Error::ZeroElement);
    }
    let n = alpha.n();
    let identity = GroupElement::identity(n);
    let initial_support = alpha.support_len();
    let mut moves: Vec<ReduceMove<S>> = Vec::new();
    let mut cur = alpha.clone();

    if cur.phased_coefficient(&identity).is_none() {
        let g = cur.support().next().expect("nonzero element").clone();
        let mv = ReduceMove::LeftMulInverse(g);
        cur = ReduceCertificate::apply_move(&mv, &cur)?;
        moves.push(mv);
    }

    while cur.support_len() > 1 {
        let target = cur
            .support()
            .find(|g| !g.is_identity())
            .expect("support > 1 must contain a non-identity element")
            .clone();
        let half = S::from_fraction(1, 2);
        let y = solve_commutation(&[], &target, &half).map_err(|_| {
            Error::Internal("no separating element for a nonzero target".into())
        })?;
        let before = cur.support_len();
        let mv = ReduceMove::ConjugateSubtract(y);
        cur = ReduceCertificate::apply_move(&mv, &cur)?;
        moves.push(mv);
        if cur.support_len() >= before {
            return Err(Error::Internal(
                "conjugate-subtract failed to shrink support".into(),
            ));
        }
        if cur.phased_coefficient(&target).is_none() {
            return Err(Error::Internal("half-turn target vanished".into()));
        }
        let mv = ReduceMove::LeftMulInverse(target);
        cur = ReduceCertificate::apply_move(&mv, &cur)?;
        moves.push(mv);
    }

    let unit_coeff = cur.coefficient(&identity);
    if unit_coeff.norm() == 0.0 {
        return Err(Error::Internal("lost the identity coefficient".into()));
    }
    moves.push(ReduceMove::Scale(unit_coeff.inv()));
    debug_assert!(moves.len() <= 2 * initial_support);
    Ok(ReduceCertificate { moves })
}

// Serialized form of a certificate (coordinates as strings, exact mode).
#[derive(Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "kebab-case")]
pub enum ReduceMoveJson {
    LeftMulInverse { x: Vec<String>, y: Vec<String> },
    ConjugateSubtract { x: Vec<String>, y: Vec<String> },
    Scale { re: f64, im: f64 },
}

impl ReduceCertificate<Rat> {
    pub fn to_json(&self) -> Vec<ReduceMoveJson> {
        self.moves
            .iter()
            .map(|m| match m {
                ReduceMove::LeftMulInverse(g) => ReduceMoveJson::LeftMulInverse {
                    x: g.x().iter().map(|c| c.to_string()).collect(),
                    y: g.y().iter().map(|c| c.to_string()).collect(),
                },
                ReduceMove::ConjugateSubtract(g) => ReduceMoveJson::ConjugateSubtract {
                    x: g.x().iter().map(|c| c.to_string()).collect(),
                    y: g.y().iter().map(|c| c.to_string()).collect(),
                },
                ReduceMove::Scale(c) => ReduceMoveJson::Scale { re: c.re, im: c.im },
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;

    fn ge_q(x: (i64, i64), y: (i64, i64)) -> GroupElement<Rat> {
        GroupElement::new(
            vec![Rat::from_fraction(x.0, x.1)],
            vec![Rat::from_fraction(y.0, y.1)],
        )
    }

    fn assert_reaches_unit(alpha: &AlgebraElement<Rat>) {
        let cert = reduce_to_unit(alpha).unwrap();
        assert!(cert.moves.len() <= 2 * alpha.support_len());
        let states = cert.replay_trace(alpha).unwrap();
        // strict support decrease at every conjugate-subtract
        for (i, mv) in cert.moves.iter().enumerate() {
            if matches!(mv, ReduceMove::ConjugateSubtract(_)) {
                assert!(states[i + 1].support_len() < states[i].support_len());
            }
        }
        let last = states.last().unwrap();
        assert_eq!(last.support_len(), 1);
        let unit = last.coefficient(&GroupElement::identity(1));
        assert!((unit - Complex64::new(1.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn single_term_scales_to_unit() {
        let alpha = AlgebraElement::monomial(ge_q((1, 1), (1, 1)), Complex64::new(5.0, 0.0));
        let cert = reduce_to_unit(&alpha).unwrap();
        assert_eq!(cert.moves.len(), 2);
        assert_reaches_unit(&alpha);
    }

    #[test]
    fn two_terms_one_round() {
        // 1 + (1,0): conjugating by the half-turn separator and
        // subtracting leaves -2·(1,0).
        let alpha = AlgebraElement::one(1)
            .add(&AlgebraElement::basis(ge_q((1, 1), (0, 1))))
            .unwrap();
        let cert = reduce_to_unit(&alpha).unwrap();
        let states = cert.replay_trace(&alpha).unwrap();
        assert_eq!(
            states[1].coefficient(&ge_q((1, 1), (0, 1))),
            Complex64::new(-2.0, 0.0)
        );
        assert_eq!(states[1].support_len(), 1);
        assert_reaches_unit(&alpha);
    }

    #[test]
    fn three_terms_at_most_two_rounds() {
        let alpha = AlgebraElement::one(1)
            .add(&AlgebraElement::basis(ge_q((1, 1), (0, 1))))
            .unwrap()
            .add(&AlgebraElement::basis(ge_q((0, 1), (1, 1))))
            .unwrap();
        let cert = reduce_to_unit(&alpha).unwrap();
        let rounds = cert
            .moves
            .iter()
            .filter(|m| matches!(m, ReduceMove::ConjugateSubtract(_)))
            .count();
        assert!(rounds <= 2);
        assert_reaches_unit(&alpha);
    }

    #[test]
    fn rejects_zero_and_float_mode() {
        assert!(matches!(
            reduce_to_unit(&AlgebraElement::<Rat>::zero(1)),
            Err(Error::ZeroElement)
        ));
        let f = AlgebraElement::<f64>::one(1);
        assert!(matches!(reduce_to_unit(&f), Err(Error::InexactMode)));
    }
}
