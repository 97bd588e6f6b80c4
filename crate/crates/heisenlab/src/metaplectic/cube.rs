//! The tracial state on ℂ*H computed from cube characteristic functions:
//! τθ = Σᵢ ⟨θχᵢ, χᵢ⟩ over the b^d translates of the side-1/b cube tiling
//! the unit cube, where b is chosen so that every lattice element with a
//! nonzero translation part moves the small cube completely off itself.
//!
//! Every integral here has a closed form, so the cube trace is an
//! independent route to the symbolic trace (coefficient of the identity).

use num::{One, Zero};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::linalg::Mat;
use crate::quad::Quad;
use crate::scalar::{abs_scalar, Scalar};
use crate::subgroup::DiscreteSubgroup;
use crate::AlgebraElement;

pub const DEFAULT_ENUM_RADIUS: i64 = 3;

const PI: f64 = std::f64::consts::PI;

#[derive(Clone, Debug)]
pub struct CubeTraceData {
    lattice: DiscreteSubgroup<Quad>,
    /// Subdivision count: the unit cube splits into b^d cubes of side 1/b.
    pub b: u64,
    /// Exact ∞-norm minimum over nonzero translation parts.
    pub min_translation: Quad,
}

impl CubeTraceData {
    pub fn lattice(&self) -> &DiscreteSubgroup<Quad> {
        &self.lattice
    }

    pub fn dim(&self) -> usize {
        self.lattice.n()
    }

    pub fn cube_count(&self) -> u64 {
        self.b.pow(self.dim() as u32)
    }

    /// The c = b^d subcube corner offsets (multiples of 1/b).
    pub fn offsets(&self) -> Vec<Vec<f64>> {
        let d = self.dim();
        let b = self.b as usize;
        let mut out = Vec::with_capacity(b.pow(d as u32));
        let mut digits = vec![0usize; d];
        loop {
            out.push(digits.iter().map(|&k| k as f64 / self.b as f64).collect());
            let mut carry = 0;
            while carry < d {
                digits[carry] += 1;
                if digits[carry] < b {
                    break;
                }
                digits[carry] = 0;
                carry += 1;
            }
            if carry == d {
                break;
            }
        }
        out
    }
}

/// Choose the smallest b such that the closed cubes h + 𝒞(1/b) and 𝒞(1/b)
/// are disjoint for every (h, k) ∈ H with h ≠ 0, i.e. 1/b < min ‖h‖∞.
///
/// The minimum is found by exhaustive enumeration of coefficient vectors
/// in a box of the given radius; a smallest-singular-value bound on the
/// projected generators certifies that no vector outside the box can do
/// better. If the lattice cannot be certified the operation fails loudly
/// instead of guessing.
pub fn choose_b(h: &DiscreteSubgroup<Quad>) -> Result<CubeTraceData> {
    choose_b_with_radius(h, DEFAULT_ENUM_RADIUS)
}

pub fn choose_b_with_radius(h: &DiscreteSubgroup<Quad>, radius: i64) -> Result<CubeTraceData> {
    let d = h.n();
    if h.rank() != 2 * d {
        return Err(Error::NoCubeParameter(format!(
            "expected a full lattice of rank {}, got rank {}",
            2 * d,
            h.rank()
        )));
    }

    // 1×ℤ^d must sit inside H.
    for i in 0..d {
        let mut flat = vec![Quad::zero(); 2 * d];
        flat[d + i] = Quad::one();
        if h.member(&GroupElement::from_flat(&flat))?.is_none() {
            return Err(Error::NoCubeParameter(format!(
                "lattice does not contain the modulation generator (0, e{})",
                i + 1
            )));
        }
    }

    // Split generators by exactly-zero translation part.
    let mut translating: Vec<&GroupElement<Quad>> = Vec::new();
    for gen in h.generators() {
        if gen.x().iter().all(|c| c.is_zero()) {
            // Pure modulation generators must lie in 1×ℤ^d, otherwise some
            // (0, k) ∈ H has non-integer k and no b works.
            for c in gen.y() {
                if c.as_integer().is_none() {
                    return Err(Error::NoCubeParameter(format!(
                        "pure modulation generator {gen} is outside 1×Z^{d}"
                    )));
                }
            }
        } else {
            translating.push(gen);
        }
    }
    let s = translating.len();
    if s == 0 {
        return Err(Error::NoCubeParameter(
            "no generator carries a translation part".into(),
        ));
    }

    // The translation parts must be independent, so that elements with
    // h = 0 are exactly the span of the pure modulation generators.
    let proj = Mat::from_columns(translating.iter().map(|g| g.x().to_vec()).collect());
    if proj.rank() != s {
        return Err(Error::NoCubeParameter(
            "translation parts of the generators are dependent; cannot certify".into(),
        ));
    }

    // Exact enumeration of the ∞-norm minimum inside the coefficient box.
    let mut min: Option<Quad> = None;
    let mut coeffs = vec![-radius; s];
    loop {
        if coeffs.iter().any(|&m| m != 0) {
            let mut v = vec![Quad::zero(); d];
            for (m, gen) in coeffs.iter().zip(translating.iter()) {
                let f = Quad::from_i64(*m);
                for (vi, xi) in v.iter_mut().zip(gen.x().iter()) {
                    *vi = vi.clone() + f.clone() * xi.clone();
                }
            }
            let norm_inf = v
                .iter()
                .map(abs_scalar)
                .max_by(|a, b| a.total_cmp(b))
                .expect("d >= 1");
            let better = match &min {
                None => true,
                Some(cur) => norm_inf.total_cmp(cur) == std::cmp::Ordering::Less,
            };
            if better {
                min = Some(norm_inf);
            }
        }
        // advance the mixed-radix counter
        let mut i = 0;
        while i < s {
            coeffs[i] += 1;
            if coeffs[i] <= radius {
                break;
            }
            coeffs[i] = -radius;
            i += 1;
        }
        if i == s {
            break;
        }
    }
    let min = min.ok_or_else(|| Error::NoCubeParameter("empty enumeration".into()))?;
    let min_f = Scalar::to_f64(&min);
    if min_f <= 0.0 {
        return Err(Error::NoCubeParameter(
            "translation parts reach 0 within enumeration bounds".into(),
        ));
    }

    // Outside the box, ‖m‖₂ > radius, so ‖Σmᵢpᵢ‖∞ ≥ σ_min·(radius+1)/√d.
    let sigma_min = proj
        .to_f64()
        .svd(false, false)
        .singular_values
        .iter()
        .fold(f64::INFINITY, |a, &b| a.min(b));
    let outside_bound = sigma_min * (radius as f64 + 1.0) / (d as f64).sqrt();
    if outside_bound < min_f * (1.0 - 1e-9) {
        return Err(Error::NoCubeParameter(format!(
            "enumeration radius {radius} cannot be certified: outside bound \
             {outside_bound:.6} is below the enumerated minimum {min_f:.6}"
        )));
    }

    // Smallest positive integer with 1/b < min, decided exactly.
    let mut b: u64 = 1;
    loop {
        let prod = min.clone() * Quad::from_i64(b as i64);
        if (prod - Quad::one()).sign() > 0 {
            break;
        }
        b += 1;
        if b > 1_000_000 {
            return Err(Error::NoCubeParameter(
                "cube side would be smaller than 1e-6".into(),
            ));
        }
    }

    Ok(CubeTraceData { lattice: h.clone(), b, min_translation: min })
}

/// ∫_{o}^{o+1/b} e^{2πik t} dt for integer k.
fn segment_integral(k: i64, offset: f64, b: u64) -> Complex64 {
    let side = 1.0 / b as f64;
    if k == 0 {
        return Complex64::new(side, 0.0);
    }
    let kf = k as f64;
    let hi = Complex64::from_polar(1.0, 2.0 * PI * kf * (offset + side));
    let lo = Complex64::from_polar(1.0, 2.0 * PI * kf * offset);
    (hi - lo) / Complex64::new(0.0, 2.0 * PI * kf)
}

/// The cube trace Σᵢ ⟨θχᵢ, χᵢ⟩ of an element supported in the lattice.
///
/// A term λ·(h, k) contributes 0 when h ≠ 0 (the shifted cube misses
/// every subcube) and otherwise λ·Σ_o Π_j ∫ e^{2πik_j t} dt over the
/// subcube offsets o.
pub fn cube_trace(theta: &AlgebraElement<Quad>, data: &CubeTraceData) -> Result<Complex64> {
    let d = data.dim();
    if theta.n() != d {
        return Err(Error::DimensionMismatch(theta.n(), d));
    }
    let offsets = data.offsets();
    let mut acc = Complex64::new(0.0, 0.0);
    for (g, coeff) in theta.terms() {
        if data.lattice.member(g)?.is_none() {
            return Err(Error::SupportOutsideSubgroup(g.to_string()));
        }
        if !g.x().iter().all(|c| c.is_zero()) {
            continue; // disjoint cubes: zero contribution
        }
        let k: Vec<i64> = g
            .y()
            .iter()
            .map(|c| {
                c.as_integer().ok_or_else(|| {
                    Error::Internal(format!("certified lattice produced non-integer k in {g}"))
                })
            })
            .collect::<Result<_>>()?;
        let mut weight = Complex64::new(0.0, 0.0);
        for o in &offsets {
            let mut prod = Complex64::new(1.0, 0.0);
            for (kj, oj) in k.iter().zip(o.iter()) {
                prod *= segment_integral(*kj, *oj, data.b);
            }
            weight += prod;
        }
        acc += coeff.value() * weight;
    }
    Ok(acc)
}
