//! Finite formal sums Σ λ_g·ḡ in the twisted group ring ℂ*𝒢ₙ.
//!
//! A coefficient is stored as a complex magnitude together with an exact
//! phase turn, so chains of twisted products, conjugations and adjoints
//! never accumulate rounding in the unimodular part. Coefficients whose
//! modulus drops below [`CHOP_THRESHOLD`] after additive cancellation are
//! removed, which makes support bookkeeping exact.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::phase::Phase;
use crate::scalar::Scalar;
use crate::symplectic::conjugation_phase;

/// Coefficients with modulus below this are dropped after add/subtract,
/// so cancellations produce true zeros.
pub const CHOP_THRESHOLD: f64 = 1e-12;

/// A complex coefficient λ = mag·e^{2πi·phase} with the unimodular part
/// kept as an exact turn.
#[derive(Clone, PartialEq)]
pub struct PhasedCoeff<S: Scalar> {
    mag: Complex64,
    phase: Phase<S>,
}

impl<S: Scalar> PhasedCoeff<S> {
    pub fn new(mag: Complex64, phase: Phase<S>) -> Self {
        PhasedCoeff { mag, phase }
    }

    pub fn from_complex(v: Complex64) -> Self {
        PhasedCoeff { mag: v, phase: Phase::zero() }
    }

    pub fn one() -> Self {
        PhasedCoeff::from_complex(Complex64::new(1.0, 0.0))
    }

    pub fn value(&self) -> Complex64 {
        self.mag * self.phase.value()
    }

    pub fn modulus(&self) -> f64 {
        self.mag.norm()
    }

    pub fn phase(&self) -> &Phase<S> {
        &self.phase
    }

    pub fn mul(&self, other: &Self) -> Self {
        PhasedCoeff {
            mag: self.mag * other.mag,
            phase: self.phase.add(&other.phase),
        }
    }

    pub fn mul_phase(&self, p: &Phase<S>) -> Self {
        PhasedCoeff { mag: self.mag, phase: self.phase.add(p) }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        PhasedCoeff { mag: self.mag * c, phase: self.phase.clone() }
    }

    pub fn conj(&self) -> Self {
        PhasedCoeff { mag: self.mag.conj(), phase: self.phase.neg() }
    }

    /// Sum; equal exact phases stay exact, otherwise both are folded to
    /// their complex values.
    pub fn add(&self, other: &Self) -> Self {
        if self.phase == other.phase {
            PhasedCoeff { mag: self.mag + other.mag, phase: self.phase.clone() }
        } else {
            PhasedCoeff::from_complex(self.value() + other.value())
        }
    }
}

impl<S: Scalar> fmt::Debug for PhasedCoeff<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·e^(2πi·{})", self.mag, self.phase)
    }
}

/// Element of ℂ*𝒢ₙ: finite support, no stored coefficient below the chop
/// threshold, support elements pairwise distinct under coordinate order.
#[derive(Clone, PartialEq)]
pub struct AlgebraElement<S: Scalar> {
    n: usize,
    terms: BTreeMap<GroupElement<S>, PhasedCoeff<S>>,
}

impl<S: Scalar> AlgebraElement<S> {
    pub fn zero(n: usize) -> Self {
        AlgebraElement { n, terms: BTreeMap::new() }
    }

    /// The ring unit 1̄ = overline{(0,0)}.
    pub fn one(n: usize) -> Self {
        AlgebraElement::basis(GroupElement::identity(n))
    }

    /// A single basis element ḡ.
    pub fn basis(g: GroupElement<S>) -> Self {
        Self::monomial(g, Complex64::new(1.0, 0.0))
    }

    pub fn monomial(g: GroupElement<S>, coeff: Complex64) -> Self {
        Self::monomial_phased(g, PhasedCoeff::from_complex(coeff))
    }

    pub fn monomial_phased(g: GroupElement<S>, coeff: PhasedCoeff<S>) -> Self {
        let n = g.n();
        let mut terms = BTreeMap::new();
        if coeff.modulus() >= CHOP_THRESHOLD {
            terms.insert(g, coeff);
        }
        AlgebraElement { n, terms }
    }

    /// ḡ⁻¹ as an algebra element: e^{2πi x·y}·overline{(-x,-y)}.
    pub fn basis_inverse(g: &GroupElement<S>) -> Self {
        let (phase, point) = g.inverse_pair();
        Self::monomial_phased(point, PhasedCoeff::new(Complex64::new(1.0, 0.0), phase))
    }

    pub fn from_terms(n: usize, terms: Vec<(GroupElement<S>, Complex64)>) -> Result<Self> {
        let mut out = AlgebraElement::zero(n);
        for (g, c) in terms {
            if g.n() != n {
                return Err(Error::DimensionMismatch(g.n(), n));
            }
            out.insert_term(g, PhasedCoeff::from_complex(c));
        }
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn support(&self) -> impl Iterator<Item = &GroupElement<S>> {
        self.terms.keys()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElement<S>, &PhasedCoeff<S>)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, g: &GroupElement<S>) -> Complex64 {
        self.terms.get(g).map_or(Complex64::new(0.0, 0.0), |c| c.value())
    }

    pub fn phased_coefficient(&self, g: &GroupElement<S>) -> Option<&PhasedCoeff<S>> {
        self.terms.get(g)
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        Ok(())
    }

    fn insert_term(&mut self, g: GroupElement<S>, coeff: PhasedCoeff<S>) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(g) {
            Entry::Vacant(e) => {
                if coeff.modulus() >= CHOP_THRESHOLD {
                    e.insert(coeff);
                }
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().add(&coeff);
                if sum.modulus() < CHOP_THRESHOLD {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.insert_term(g.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = AlgebraElement::zero(self.n);
        for (g, coeff) in &self.terms {
            out.insert_term(g.clone(), coeff.scale(c));
        }
        out
    }

    /// Scale every coefficient by an exact unimodular phase.
    pub fn scale_phase(&self, p: &Phase<S>) -> Self {
        let mut out = AlgebraElement::zero(self.n);
        for (g, coeff) in &self.terms {
            out.insert_term(g.clone(), coeff.mul_phase(p));
        }
        out
    }

    /// Twisted product, the bilinear extension of ḡ·h̄ = e^{2πi a·y}·(g+h).
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = AlgebraElement::zero(self.n);
        for (g, cg) in &self.terms {
            for (h, ch) in &other.terms {
                let (twist, gh) = g.product(h)?;
                out.insert_term(gh, cg.mul(ch).mul_phase(&twist));
            }
        }
        Ok(out)
    }

    /// The involution (λḡ)* = λ̄·ḡ⁻¹.
    pub fn adjoint(&self) -> Self {
        let mut out = AlgebraElement::zero(self.n);
        for (g, c) in &self.terms {
            let (inv_phase, inv_point) = g.inverse_pair();
            out.insert_term(inv_point, c.conj().mul_phase(&inv_phase));
        }
        out
    }

    /// ḡ·α·ḡ⁻¹: every support element is fixed, its coefficient picks up
    /// the symplectic phase e^{2πiβ(g,h)}.
    pub fn conjugate_by(&self, g: &GroupElement<S>) -> Result<Self> {
        if g.n() != self.n {
            return Err(Error::DimensionMismatch(g.n(), self.n));
        }
        let mut out = AlgebraElement::zero(self.n);
        for (h, c) in &self.terms {
            let p = conjugation_phase(g, h)?;
            out.insert_term(h.clone(), c.mul_phase(&p));
        }
        Ok(out)
    }

    /// The trace τ: coefficient of the identity basis element.
    pub fn trace(&self) -> Complex64 {
        self.coefficient(&GroupElement::identity(self.n))
    }

    /// Structural equality: identical supports, exactly equal phase turns
    /// and bit-equal magnitudes.
    pub fn eq_exact(&self, other: &Self) -> bool {
        self.n == other.n
            && self.terms.len() == other.terms.len()
            && self.terms.iter().zip(other.terms.iter()).all(|((g, c), (h, d))| {
                g == h && c.phase == d.phase && c.mag == d.mag
            })
    }

    /// Same support (union-wise), coefficient values within `tol`.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        if self.n != other.n {
            return false;
        }
        self.terms
            .keys()
            .chain(other.terms.keys())
            .all(|g| (self.coefficient(g) - other.coefficient(g)).norm() <= tol)
    }

    /// Merge float-mode terms whose coordinates agree within `tol`
    /// (adjacent in the canonical order). Exact elements are unchanged.
    pub fn coalesce(&self, tol: f64) -> Self {
        if S::EXACT {
            return self.clone();
        }
        let mut out = AlgebraElement::zero(self.n);
        let mut pending: Option<(GroupElement<S>, PhasedCoeff<S>)> = None;
        for (g, c) in &self.terms {
            match pending.take() {
                None => pending = Some((g.clone(), c.clone())),
                Some((p, cp)) => {
                    if p.approx_eq(g, tol) {
                        pending = Some((p, cp.add(c)));
                    } else {
                        out.insert_term(p, cp);
                        pending = Some((g.clone(), c.clone()));
                    }
                }
            }
        }
        if let Some((p, cp)) = pending {
            out.insert_term(p, cp);
        }
        out
    }

    pub fn map_scalar<T: Scalar>(&self, f: impl Fn(&S) -> T + Copy) -> AlgebraElement<T> {
        let mut out = AlgebraElement::zero(self.n);
        for (g, c) in &self.terms {
            out.insert_term(
                g.map_scalar(f),
                PhasedCoeff::new(c.mag, Phase::new(f(c.phase.turn()))),
            );
        }
        out
    }
}

impl<S: Scalar> fmt::Debug for AlgebraElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<S: Scalar> fmt::Display for AlgebraElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(g, c)| format!("{}*{}", fmt_complex(c.value()), g))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn fmt_complex(v: Complex64) -> String {
    if v.im == 0.0 {
        format!("{}", v.re)
    } else if v.re == 0.0 {
        format!("{}i", v.im)
    } else if v.im < 0.0 {
        format!("({}{}i)", v.re, v.im)
    } else {
        format!("({}+{}i)", v.re, v.im)
    }
}

// ---------------------------------------------------------------------
// JSON form: {"n":1,"terms":[{"x":["1/2"],"y":["0"],"re":1.0,"im":0.0}]}
// ---------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct TermJson {
    x: Vec<String>,
    y: Vec<String>,
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    n: usize,
    terms: Vec<TermJson>,
}

impl<S: Scalar> Serialize for AlgebraElement<S> {
    fn serialize<Ser: Serializer>(&self, serializer: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        let terms = self
            .terms
            .iter()
            .map(|(g, c)| {
                let v = c.value();
                TermJson {
                    x: g.x().iter().map(|c| c.to_string()).collect(),
                    y: g.y().iter().map(|c| c.to_string()).collect(),
                    re: v.re,
                    im: v.im,
                }
            })
            .collect();
        ElementJson { n: self.n, terms }.serialize(serializer)
    }
}

impl<'de, S: Scalar> Deserialize<'de> for AlgebraElement<S> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = ElementJson::deserialize(deserializer)?;
        let mut out = AlgebraElement::zero(raw.n);
        for t in raw.terms {
            if t.x.len() != raw.n || t.y.len() != raw.n {
                return Err(D::Error::custom("term coordinate length != n"));
            }
            let parse = |s: &String| {
                S::parse_str(s).ok_or_else(|| D::Error::custom(format!("bad coordinate {s:?}")))
            };
            let x = t.x.iter().map(parse).collect::<std::result::Result<Vec<_>, _>>()?;
            let y = t.y.iter().map(parse).collect::<std::result::Result<Vec<_>, _>>()?;
            out.insert_term(
                GroupElement::new(x, y),
                PhasedCoeff::from_complex(Complex64::new(t.re, t.im)),
            );
        }
        Ok(out)
    }
}
