//! The metaplectic operator pipeline and its exact conjugation action on
//! group elements.
//!
//! Factors are stored in operator application order (first applied
//! first). For a factor with unitary u and linear map m the forward
//! conjugation is u·ρ(g)·u⁻¹ = c·ρ(m⁻¹g); chaining the four factors
//! B, A, C, B in application order realizes g ↦ τ⁻¹g with τ = B·A·C·B,
//! and the accumulated phases stay exact in ℚ(√2). The inverse pipeline
//! is the reversed list of inverse factors.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::{self, PacketSum};
use crate::group::{dot, GroupElement};
use crate::phase::Phase;
use crate::quad::Quad;
use crate::scalar::{Rat, Scalar};
use crate::subgroup::DiscreteSubgroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MetaplecticFactor {
    /// f(t) ↦ 2^{−d/4}·f(Jt/√2)
    Dilation,
    /// f(t) ↦ e^{−πi Jt·t}·f(t)
    Chirp,
    /// f(t) ↦ ∫ e^{2πi t·s} f(s) ds
    Fourier,
    InverseDilation,
    InverseChirp,
    InverseFourier,
}

/// Swap the two halves of a 2m-coordinate block: J·v.
fn j_apply(v: &[Quad]) -> Vec<Quad> {
    let h = v.len() / 2;
    let mut out = v.to_vec();
    for i in 0..h {
        out.swap(i, h + i);
    }
    out
}

fn scale_vec(v: &[Quad], s: &Quad) -> Vec<Quad> {
    v.iter().map(|c| c.clone() * s.clone()).collect()
}

impl MetaplecticFactor {
    pub fn inverse(self) -> Self {
        match self {
            MetaplecticFactor::Dilation => MetaplecticFactor::InverseDilation,
            MetaplecticFactor::Chirp => MetaplecticFactor::InverseChirp,
            MetaplecticFactor::Fourier => MetaplecticFactor::InverseFourier,
            MetaplecticFactor::InverseDilation => MetaplecticFactor::Dilation,
            MetaplecticFactor::InverseChirp => MetaplecticFactor::Chirp,
            MetaplecticFactor::InverseFourier => MetaplecticFactor::Fourier,
        }
    }

    /// Apply the unitary to a packet sum on L²(ℝ^d), d even.
    pub fn apply(self, f: &PacketSum) -> Result<PacketSum> {
        let d = match f.dim() {
            None => return Ok(PacketSum::zero()),
            Some(d) => d,
        };
        match self {
            MetaplecticFactor::Dilation => {
                let m = gaussian::j_matrix(d)? / 2.0f64.sqrt();
                let scale = num_complex::Complex64::new(2.0f64.powf(-(d as f64) / 4.0), 0.0);
                gaussian::linear_substitute(f, &m, scale)
            }
            MetaplecticFactor::InverseDilation => {
                let m = gaussian::j_matrix(d)? * 2.0f64.sqrt();
                let scale = num_complex::Complex64::new(2.0f64.powf(d as f64 / 4.0), 0.0);
                gaussian::linear_substitute(f, &m, scale)
            }
            MetaplecticFactor::Chirp => gaussian::chirp(f, 1),
            MetaplecticFactor::InverseChirp => gaussian::chirp(f, -1),
            MetaplecticFactor::Fourier => gaussian::fourier(f, false),
            MetaplecticFactor::InverseFourier => gaussian::fourier(f, true),
        }
    }

    /// Exact forward conjugation u·ρ(g)·u⁻¹ = e^{2πi·turn}·ρ(image) on an
    /// element of 𝒢_d (so x, y ∈ ℝ^d with d even).
    pub fn conjugate(self, g: &GroupElement<Quad>) -> Result<(Phase<Quad>, GroupElement<Quad>)> {
        if !g.n().is_multiple_of(2) {
            return Err(Error::DimensionMismatch(g.n(), g.n() + 1));
        }
        let x = g.x();
        let y = g.y();
        let two = Quad::from_i64(2);
        Ok(match self {
            MetaplecticFactor::Dilation => {
                // image (√2·Jx, Jy/√2), no phase
                let img = GroupElement::new(
                    scale_vec(&j_apply(x), &Quad::sqrt2()),
                    scale_vec(&j_apply(y), &Quad::inv_sqrt2()),
                );
                (Phase::zero(), img)
            }
            MetaplecticFactor::InverseDilation => {
                let img = GroupElement::new(
                    scale_vec(&j_apply(x), &Quad::inv_sqrt2()),
                    scale_vec(&j_apply(y), &Quad::sqrt2()),
                );
                (Phase::zero(), img)
            }
            MetaplecticFactor::Chirp => {
                // image (x, y + Jx), turn +(Jx·x)/2
                let jx = j_apply(x);
                let turn = dot(&jx, x) / two;
                let ynew: Vec<Quad> = y
                    .iter()
                    .zip(jx.iter())
                    .map(|(a, b)| a.clone() + b.clone())
                    .collect();
                (Phase::new(turn), GroupElement::new(x.to_vec(), ynew))
            }
            MetaplecticFactor::InverseChirp => {
                let jx = j_apply(x);
                let turn = -(dot(&jx, x) / two);
                let ynew: Vec<Quad> = y
                    .iter()
                    .zip(jx.iter())
                    .map(|(a, b)| a.clone() - b.clone())
                    .collect();
                (Phase::new(turn), GroupElement::new(x.to_vec(), ynew))
            }
            MetaplecticFactor::Fourier => {
                // image (y, −x), turn −x·y
                let turn = -dot(x, y);
                let img = GroupElement::new(
                    y.to_vec(),
                    x.iter().map(|c| -c.clone()).collect(),
                );
                (Phase::new(turn), img)
            }
            MetaplecticFactor::InverseFourier => {
                let turn = -dot(x, y);
                let img = GroupElement::new(
                    y.iter().map(|c| -c.clone()).collect(),
                    x.to_vec(),
                );
                (Phase::new(turn), img)
            }
        })
    }
}

/// Chain forward conjugation through a factor list in application order.
pub(crate) fn conjugate_through(
    factors: &[MetaplecticFactor],
    g: &GroupElement<Quad>,
) -> Result<(Phase<Quad>, GroupElement<Quad>)> {
    let mut phase = Phase::zero();
    let mut cur = g.clone();
    for f in factors {
        let (p, img) = f.conjugate(&cur)?;
        phase = phase.add(&p);
        cur = img;
    }
    Ok((phase, cur))
}

/// One generator's conjugation data: u·ρ(ψ(source))·u⁻¹ =
/// e^{2πi·phase_turn}·ρ(image).
#[derive(Clone, Debug)]
pub struct MapEntry {
    pub source: GroupElement<Rat>,
    pub phase_turn: Phase<Quad>,
    pub image: GroupElement<Quad>,
}

#[derive(Clone, Debug)]
pub struct MetaplecticPipeline {
    n: usize,
    factors: Vec<MetaplecticFactor>,
    source: DiscreteSubgroup<Rat>,
    target: DiscreteSubgroup<Quad>,
    map: Vec<MapEntry>,
}

impl MetaplecticPipeline {
    pub(crate) fn new(
        n: usize,
        factors: Vec<MetaplecticFactor>,
        source: DiscreteSubgroup<Rat>,
        target: DiscreteSubgroup<Quad>,
        map: Vec<MapEntry>,
    ) -> Self {
        MetaplecticPipeline { n, factors, source, target, map }
    }

    /// Ambient dimension of the source subgroup (operators act on
    /// L²(ℝ^{2n})).
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn factors(&self) -> &[MetaplecticFactor] {
        &self.factors
    }

    pub fn source(&self) -> &DiscreteSubgroup<Rat> {
        &self.source
    }

    pub fn target(&self) -> &DiscreteSubgroup<Quad> {
        &self.target
    }

    pub fn map(&self) -> &[MapEntry] {
        &self.map
    }

    /// Apply the composite unitary (or its inverse: reversed list of
    /// inverse factors) to a packet sum on L²(ℝ^{2n}).
    pub fn apply(&self, f: &PacketSum, forward: bool) -> Result<PacketSum> {
        if let Some(d) = f.dim() {
            if d != 2 * self.n {
                return Err(Error::DimensionMismatch(d, 2 * self.n));
            }
        }
        let mut cur = f.clone();
        if forward {
            for factor in &self.factors {
                cur = factor.apply(&cur)?;
            }
        } else {
            for factor in self.factors.iter().rev() {
                cur = factor.inverse().apply(&cur)?;
            }
        }
        Ok(cur)
    }

    /// Exact conjugation of an arbitrary element of 𝒢₂ₙ through the
    /// composite: u·ρ(g)·u⁻¹ = e^{2πi·turn}·ρ(τ⁻¹g).
    pub fn conjugate_element(
        &self,
        g: &GroupElement<Quad>,
    ) -> Result<(Phase<Quad>, GroupElement<Quad>)> {
        if g.n() != 2 * self.n {
            return Err(Error::DimensionMismatch(g.n(), 2 * self.n));
        }
        conjugate_through(&self.factors, g)
    }

    /// Transport an element of ℂ*G through ψ and the pipeline: the image
    /// of Σ λ_g·ḡ is Σ λ_g·c(g)·overline{τ⁻¹ψ(g)} ∈ ℂ*H.
    pub fn transport_algebra(
        &self,
        alpha: &crate::algebra::AlgebraElement<Rat>,
    ) -> Result<crate::algebra::AlgebraElement<Quad>> {
        if alpha.n() != self.n {
            return Err(Error::DimensionMismatch(alpha.n(), self.n));
        }
        let lifted = alpha.map_scalar(Quad::from_rational);
        let mut out = crate::algebra::AlgebraElement::zero(2 * self.n);
        for (g, coeff) in lifted.terms() {
            let psi = super::embed_double(g);
            let (phase, image) = self.conjugate_element(&psi)?;
            out = out.add(&crate::algebra::AlgebraElement::monomial_phased(
                image,
                coeff.mul_phase(&phase),
            ))?;
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------------
// JSON form: ordered factor names, the acting dimension, and the map
// table {g, turn(c(g)), h(g)} with exact coordinates as strings.
// ---------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct PointJson {
    x: Vec<String>,
    y: Vec<String>,
}

fn point_json<S: Scalar>(g: &GroupElement<S>) -> PointJson {
    PointJson {
        x: g.x().iter().map(|c| c.to_string()).collect(),
        y: g.y().iter().map(|c| c.to_string()).collect(),
    }
}

#[derive(Serialize, Deserialize)]
struct MapEntryJson {
    g: PointJson,
    turn: String,
    h: PointJson,
}

#[derive(Serialize, Deserialize)]
struct PipelineJson {
    n: usize,
    acts_on_dim: usize,
    factors: Vec<MetaplecticFactor>,
    target_generators: Vec<PointJson>,
    map: Vec<MapEntryJson>,
}

impl Serialize for MetaplecticPipeline {
    fn serialize<Ser: serde::Serializer>(
        &self,
        serializer: Ser,
    ) -> std::result::Result<Ser::Ok, Ser::Error> {
        PipelineJson {
            n: self.n,
            acts_on_dim: 2 * self.n,
            factors: self.factors.clone(),
            target_generators: self.target.generators().iter().map(point_json).collect(),
            map: self
                .map
                .iter()
                .map(|e| MapEntryJson {
                    g: point_json(&e.source),
                    turn: e.phase_turn.turn().to_string(),
                    h: point_json(&e.image),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}
