//! Metaplectic reduction: embed a discrete subgroup G ≤ 𝒢ₙ into 𝒢₂ₙ,
//! complete its generators to an ℝ-basis, and conjugate the embedded
//! copy into a lattice H ⊆ 𝒢₂ₙ containing 1×ℤ²ⁿ by a pipeline of
//! dilation, chirp and Fourier factors realizing the transition matrix
//! T = B·A·C·B. All basis bookkeeping is exact in ℚ(√2).

mod cube;
mod pipeline;

pub use cube::{choose_b, cube_trace, CubeTraceData, DEFAULT_ENUM_RADIUS};
pub use pipeline::{MapEntry, MetaplecticFactor, MetaplecticPipeline};

use num::{One, Zero};

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::linalg::Mat;
use crate::quad::Quad;
use crate::scalar::{Rat, Scalar};
use crate::subgroup::DiscreteSubgroup;

/// The monomorphism ψ: 𝒢ₙ → 𝒢₂ₙ, (x, y) ↦ ((x, 0), (y, 0)). It preserves
/// the twist phase, so it extends to a ring embedding ℂ*𝒢ₙ → ℂ*𝒢₂ₙ.
pub fn embed_double<S: Scalar>(g: &GroupElement<S>) -> GroupElement<S> {
    let n = g.n();
    let mut x = g.x().to_vec();
    x.extend(std::iter::repeat_with(S::zero).take(n));
    let mut y = g.y().to_vec();
    y.extend(std::iter::repeat_with(S::zero).take(n));
    GroupElement::new(x, y)
}

/// Termwise ψ on algebra elements (phases and coefficients unchanged).
pub fn embed_algebra<S: Scalar>(alpha: &AlgebraElement<S>) -> AlgebraElement<S> {
    let mut out = AlgebraElement::zero(2 * alpha.n());
    for (g, coeff) in alpha.terms() {
        out = out
            .add(&AlgebraElement::monomial_phased(embed_double(g), coeff.clone()))
            .expect("same dimension");
    }
    out
}

/// Extend the generators of G to an ℝ-basis of 𝒢ₙ ≅ ℝ²ⁿ: the first r
/// entries are G's generators, the rest are standard basis vectors added
/// by greedy exact rank extension in the order e₁, e₂, ….
pub fn complete_basis<S: Scalar>(g: &DiscreteSubgroup<S>) -> Result<Vec<GroupElement<S>>> {
    if !S::EXACT {
        return Err(Error::InexactMode);
    }
    let n = g.n();
    let mut basis: Vec<GroupElement<S>> = g.generators().to_vec();
    let mut rank = basis.len();
    for i in 0..2 * n {
        if rank == 2 * n {
            break;
        }
        let mut flat = vec![S::zero(); 2 * n];
        flat[i] = S::one();
        let candidate = GroupElement::from_flat(&flat);
        let mut cols: Vec<Vec<S>> = basis.iter().map(|b| b.flat()).collect();
        cols.push(candidate.flat());
        if Mat::from_columns(cols).rank() == rank + 1 {
            basis.push(candidate);
            rank += 1;
        }
    }
    if rank != 2 * n {
        return Err(Error::DependentGenerators);
    }
    Ok(basis)
}

/// The transition matrix T from the standard basis ℰ of 𝒢₂ₙ to the
/// √2-scaled basis ℱ, together with its factorization T = B·A·C·B.
/// All four are exact 4n×4n matrices over ℚ(√2).
#[derive(Clone, Debug)]
pub struct TransitionFactors {
    pub t: Mat<Quad>,
    pub b: Mat<Quad>,
    pub a: Mat<Quad>,
    pub c: Mat<Quad>,
}

/// J_{2n} = [[0ₙ, Iₙ], [Iₙ, 0ₙ]] as an exact matrix.
fn j_block(two_n: usize) -> Mat<Quad> {
    let h = two_n / 2;
    let mut j = Mat::zeros(two_n, two_n);
    for i in 0..h {
        j[(i, h + i)] = Quad::one();
        j[(h + i, i)] = Quad::one();
    }
    j
}

fn block_2x2(blocks: [[Mat<Quad>; 2]; 2]) -> Mat<Quad> {
    let m = blocks[0][0].nrows();
    let mut out = Mat::zeros(2 * m, 2 * m);
    for (bi, row) in blocks.iter().enumerate() {
        for (bj, blk) in row.iter().enumerate() {
            for i in 0..m {
                for j in 0..m {
                    out[(bi * m + i, bj * m + j)] = blk[(i, j)].clone();
                }
            }
        }
    }
    out
}

impl TransitionFactors {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let m = 2 * n;
        let id = Mat::<Quad>::identity(m);
        let zero = Mat::<Quad>::zeros(m, m);
        let j = j_block(m);
        let isq = Quad::inv_sqrt2();
        let sq = Quad::sqrt2();
        let scale = |mat: &Mat<Quad>, s: &Quad| mat.map_scalar(|v| v.clone() * s.clone());
        let neg = |mat: &Mat<Quad>| mat.map_scalar(|v| -v.clone());

        let t = block_2x2([
            [scale(&id, &isq), neg(&scale(&j, &isq))],
            [scale(&j, &isq), scale(&id, &isq)],
        ]);
        let b = block_2x2([[id.clone(), zero.clone()], [neg(&j), id.clone()]]);
        let a = block_2x2([
            [scale(&j, &isq), zero.clone()],
            [zero.clone(), scale(&j, &sq)],
        ]);
        let c = block_2x2([[zero.clone(), neg(&id)], [id.clone(), zero]]);

        let factors = TransitionFactors { t, b, a, c };
        debug_assert!(factors.product_bacb() == factors.t);
        factors
    }

    pub fn product_bacb(&self) -> Mat<Quad> {
        self.b.matmul(&self.a).matmul(&self.c).matmul(&self.b)
    }

    /// Tᵀ, which equals T⁻¹ since T is orthogonal.
    pub fn t_inverse(&self) -> Mat<Quad> {
        self.t.transpose()
    }
}

/// Construct the lattice H ⊆ 𝒢₂ₙ containing 1×ℤ²ⁿ and the metaplectic
/// pipeline conjugating every ℂ·ψ(g), g ∈ G, into ℂ·H.
///
/// The basis 𝒦 consists of the ψ-embedded completed basis of G followed
/// by the last 2n elements of ℱ; its ℱ-coordinates Aᵢ, read in the
/// standard basis, are the generators hᵢ = Tᵀ·ψ(gᵢ) (and hᵢ = (0, eᵢ)
/// for the tail, which is what puts 1×ℤ²ⁿ inside H).
pub fn build_h(g: &DiscreteSubgroup<Rat>) -> Result<(DiscreteSubgroup<Quad>, MetaplecticPipeline)> {
    let n = g.n();
    let completed = complete_basis(g)?;
    let factors = TransitionFactors::new(n);
    let t_inv = factors.t_inverse();

    let mut h_gens: Vec<GroupElement<Quad>> = Vec::with_capacity(4 * n);
    for gi in &completed {
        let psi = embed_double(gi).map_scalar(Quad::from_rational);
        let coords = t_inv.matvec(&psi.flat());
        h_gens.push(GroupElement::from_flat(&coords));
    }
    for i in 0..2 * n {
        let mut flat = vec![Quad::zero(); 4 * n];
        flat[2 * n + i] = Quad::one();
        h_gens.push(GroupElement::from_flat(&flat));
    }
    let h = DiscreteSubgroup::new(2 * n, h_gens)?;

    // 1×ℤ²ⁿ ⊆ H, checked by exact membership rather than by construction.
    for i in 0..2 * n {
        let mut flat = vec![Quad::zero(); 4 * n];
        flat[2 * n + i] = Quad::one();
        let e = GroupElement::from_flat(&flat);
        if h.member(&e)?.is_none() {
            return Err(Error::Internal(format!(
                "modulation generator {e} escaped the constructed lattice"
            )));
        }
    }

    let factor_chain = vec![
        MetaplecticFactor::Chirp,
        MetaplecticFactor::Dilation,
        MetaplecticFactor::Fourier,
        MetaplecticFactor::Chirp,
    ];
    let mut map = Vec::with_capacity(g.rank());
    for orig in g.generators() {
        let psi = embed_double(orig).map_scalar(Quad::from_rational);
        let (phase, image) = pipeline::conjugate_through(&factor_chain, &psi)?;
        let expected = GroupElement::from_flat(&t_inv.matvec(&psi.flat()));
        if image != expected {
            return Err(Error::Internal(
                "pipeline conjugation disagrees with the transition matrix".into(),
            ));
        }
        if h.member(&image)?.is_none() {
            return Err(Error::Internal(format!("image {image} is not in H")));
        }
        map.push(MapEntry { source: orig.clone(), phase_turn: phase, image });
    }

    let pipeline = MetaplecticPipeline::new(n, factor_chain, g.clone(), h.clone(), map);
    Ok((h, pipeline))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::Zero;

    fn ge_q(x: (i64, i64), y: (i64, i64)) -> GroupElement<Rat> {
        GroupElement::new(
            vec![Rat::from_fraction(x.0, x.1)],
            vec![Rat::from_fraction(y.0, y.1)],
        )
    }

    #[test]
    fn embedding_preserves_twist_phase() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(44);
        for _ in 0..100 {
            let n = 1 + rng.gen_range(0..2usize);
            let mut rand_pt = |n: usize| {
                GroupElement::new(
                    (0..n)
                        .map(|_| Rat::from_fraction(rng.gen_range(-4..=4), rng.gen_range(1..=4)))
                        .collect(),
                    (0..n)
                        .map(|_| Rat::from_fraction(rng.gen_range(-4..=4), rng.gen_range(1..=4)))
                        .collect(),
                )
            };
            let g = rand_pt(n);
            let h = rand_pt(n);
            let (p, prod) = g.product(&h).unwrap();
            let (p2, prod2) = embed_double(&g).product(&embed_double(&h)).unwrap();
            assert_eq!(p.turn(), p2.turn());
            assert_eq!(embed_double(&prod), prod2);
        }
        // ψ((1/2, 1)) = ((1/2, 0), (1, 0))
        let e = embed_double(&ge_q((1, 2), (1, 1)));
        assert_eq!(e.x(), &[Rat::from_fraction(1, 2), Rat::zero()]);
        assert_eq!(e.y(), &[Rat::from_i64(1), Rat::zero()]);
        assert!(embed_double(&GroupElement::<Rat>::identity(1)).is_identity());
    }

    #[test]
    fn basis_completion_is_greedy_and_deterministic() {
        // full-rank subgroup: generators returned unchanged
        let full = DiscreteSubgroup::<Rat>::standard_lattice(1);
        let basis = complete_basis(&full).unwrap();
        assert_eq!(basis, full.generators().to_vec());

        // rank-1 ⟨(1,0)⟩ in 𝒢₁ extends by (0,1) = second standard vector
        let g = DiscreteSubgroup::new(1, vec![ge_q((1, 1), (0, 1))]).unwrap();
        let basis = complete_basis(&g).unwrap();
        assert_eq!(basis.len(), 2);
        assert_eq!(basis[0], ge_q((1, 1), (0, 1)));
        assert_eq!(basis[1], ge_q((0, 1), (1, 1)));

        // trivial subgroup: the standard basis itself
        let t = DiscreteSubgroup::<Rat>::trivial(1);
        let basis = complete_basis(&t).unwrap();
        assert_eq!(basis.len(), 2);
        assert_eq!(basis[0], ge_q((1, 1), (0, 1)));
        assert_eq!(basis[1], ge_q((0, 1), (1, 1)));

        // float coordinates are refused rather than approximated
        let f = DiscreteSubgroup::<f64>::trivial(1);
        assert!(matches!(complete_basis(&f), Err(Error::InexactMode)));
    }

    #[test]
    fn transition_factorization_is_exact() {
        for n in 1..=3 {
            let tf = TransitionFactors::new(n);
            assert_eq!(tf.product_bacb(), tf.t, "B·A·C·B = T fails at n={n}");
            // J² = I
            let j = j_block(2 * n);
            assert_eq!(j.matmul(&j), Mat::identity(2 * n));
            // T orthogonal and det T = 1
            assert_eq!(tf.t.matmul(&tf.t_inverse()), Mat::identity(4 * n));
            assert_eq!(tf.t.det(), Quad::one());
            // float check
            let diff = (tf.product_bacb().to_f64() - tf.t.to_f64()).abs().max();
            assert!(diff < 1e-12);
        }
    }

    #[test]
    fn lattice_construction_for_standard_lattice() {
        let g = DiscreteSubgroup::<Rat>::standard_lattice(1);
        let (h, pipe) = build_h(&g).unwrap();
        assert_eq!(h.n(), 2);
        assert_eq!(h.rank(), 4);
        // last 2n generators are exactly the modulation vectors (0, eⱼ)
        let gens = h.generators();
        for (i, gen) in gens[2..].iter().enumerate() {
            let mut flat = vec![Quad::zero(); 4];
            flat[2 + i] = Quad::one();
            assert_eq!(gen, &GroupElement::from_flat(&flat));
        }
        // h₁ = Tᵀψ(1,0) = (1/√2, 0, 0, -1/√2)
        let isq = Quad::inv_sqrt2();
        assert_eq!(
            gens[0],
            GroupElement::from_flat(&[isq.clone(), Quad::zero(), Quad::zero(), -isq.clone()])
        );
        // τH = 𝒦 ⊇ ψG: T·hᵢ reproduces ψ(gᵢ) for original generators
        let tf = TransitionFactors::new(1);
        for (orig, entry) in g.generators().iter().zip(pipe.map().iter()) {
            let back = tf.t.matvec(&entry.image.flat());
            let psi = embed_double(orig).map_scalar(Quad::from_rational);
            assert_eq!(GroupElement::from_flat(&back), psi);
        }
    }

    #[test]
    fn lattice_construction_for_trivial_and_rank_one() {
        for g in [
            DiscreteSubgroup::<Rat>::trivial(1),
            DiscreteSubgroup::new(1, vec![ge_q((1, 1), (0, 1))]).unwrap(),
            DiscreteSubgroup::new(1, vec![ge_q((1, 2), (0, 1)), ge_q((0, 1), (1, 1))]).unwrap(),
        ] {
            let (h, pipe) = build_h(&g).unwrap();
            assert_eq!(h.rank(), 4);
            assert_eq!(pipe.map().len(), g.rank());
            for i in 0..2 {
                let mut flat = vec![Quad::zero(); 4];
                flat[2 + i] = Quad::one();
                assert!(h.member(&GroupElement::from_flat(&flat)).unwrap().is_some());
            }
        }
    }
}
