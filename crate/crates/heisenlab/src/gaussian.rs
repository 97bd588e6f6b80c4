//! Generalized Gaussian packets f(t) = exp(−π tᵀAt + 2π wᵀt + r) on ℝ^d
//! with complex symmetric A, Re A ≻ 0. The family is closed under
//! time–frequency shifts, Fourier transform (in the e^{+2πit·s}
//! convention), chirp multiplication, real linear substitution and
//! tensoring, and has closed-form inner products — so every operator in
//! the pipeline acts exactly on the (A, w, r) data.
//!
//! Branch convention: −½·log det is evaluated as the sum of principal
//! logarithms of the LDLᵀ pivots of the complex symmetric matrix. On the
//! convex set {Re ≻ 0} every pivot stays in the open right half-plane,
//! so this is the analytic continuation from real SPD matrices — the
//! branch the Gaussian integral formula requires.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::scalar::Scalar;

const PI: f64 = std::f64::consts::PI;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[derive(Clone, Debug)]
pub struct GaussianPacket {
    a: DMatrix<Complex64>,
    w: DVector<Complex64>,
    r: Complex64,
}

impl GaussianPacket {
    /// Validating constructor: A must be symmetric (to 1e−14) with
    /// positive definite real part.
    pub fn new(a: DMatrix<Complex64>, w: DVector<Complex64>, r: Complex64) -> Result<Self> {
        let d = a.nrows();
        if a.ncols() != d || w.len() != d {
            return Err(Error::InvalidPacket("matrix/vector shape mismatch".into()));
        }
        let asym = (&a - a.transpose()).map(|z| z.norm()).max();
        if d > 0 && asym > 1e-14 {
            return Err(Error::InvalidPacket(format!(
                "A is not symmetric: max |A - Aᵀ| = {asym:.3e}"
            )));
        }
        let packet = Self::unchecked(a, w, r);
        let min_eig = packet.re_part_min_eig();
        if min_eig <= 0.0 {
            return Err(Error::InvalidPacket(format!(
                "Re A is not positive definite: min eigenvalue {min_eig:.3e}"
            )));
        }
        Ok(packet)
    }

    /// Internal constructor for operator images; symmetrizes A to absorb
    /// rounding (closure under the operators is exact in exact arithmetic).
    fn unchecked(a: DMatrix<Complex64>, w: DVector<Complex64>, r: Complex64) -> Self {
        let sym = (&a + a.transpose()).map(|z| z * 0.5);
        GaussianPacket { a: sym, w, r }
    }

    /// The standard Gaussian φ(t) = exp(−π tᵀt).
    pub fn standard(d: usize) -> Self {
        GaussianPacket {
            a: DMatrix::identity(d, d).map(|v: f64| c(v, 0.0)),
            w: DVector::zeros(d),
            r: c(0.0, 0.0),
        }
    }

    pub fn dim(&self) -> usize {
        self.a.nrows()
    }

    pub fn a(&self) -> &DMatrix<Complex64> {
        &self.a
    }

    pub fn w(&self) -> &DVector<Complex64> {
        &self.w
    }

    pub fn r(&self) -> Complex64 {
        self.r
    }

    fn re_part_min_eig(&self) -> f64 {
        if self.dim() == 0 {
            return 1.0;
        }
        let re = self.a.map(|z| z.re);
        re.symmetric_eigen().eigenvalues.min()
    }

    /// Pointwise value exp(−π tᵀAt + 2π wᵀt + r).
    pub fn eval(&self, t: &[f64]) -> Complex64 {
        assert_eq!(t.len(), self.dim());
        let tv = DVector::from_iterator(t.len(), t.iter().map(|&v| c(v, 0.0)));
        let quad = (&self.a * &tv).dot(&tv);
        let lin = self.w.dot(&tv);
        (-PI * quad + 2.0 * PI * lin + self.r).exp()
    }
}

/// A finite sum of Gaussian packets; the empty sum is the zero function.
#[derive(Clone, Debug, Default)]
pub struct PacketSum {
    packets: Vec<GaussianPacket>,
}

impl PacketSum {
    pub fn zero() -> Self {
        PacketSum { packets: Vec::new() }
    }

    pub fn from_packet(p: GaussianPacket) -> Self {
        PacketSum { packets: vec![p] }
    }

    pub fn standard(d: usize) -> Self {
        Self::from_packet(GaussianPacket::standard(d))
    }

    pub fn packets(&self) -> &[GaussianPacket] {
        &self.packets
    }

    pub fn is_zero(&self) -> bool {
        self.packets.is_empty()
    }

    pub fn dim(&self) -> Option<usize> {
        self.packets.first().map(|p| p.dim())
    }

    fn check_dim(&self, d: usize) -> Result<()> {
        match self.dim() {
            Some(pd) if pd != d => Err(Error::DimensionMismatch(pd, d)),
            _ => Ok(()),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut packets = self.packets.clone();
        packets.extend(other.packets.iter().cloned());
        PacketSum { packets }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        if factor.norm() == 0.0 {
            return PacketSum::zero();
        }
        let ln = factor.ln();
        PacketSum {
            packets: self
                .packets
                .iter()
                .map(|p| GaussianPacket { a: p.a.clone(), w: p.w.clone(), r: p.r + ln })
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(c(-1.0, 0.0)))
    }

    pub fn eval(&self, t: &[f64]) -> Complex64 {
        self.packets.iter().map(|p| p.eval(t)).sum()
    }
}

/// LDLᵀ pivots of a complex symmetric matrix (no conjugation); the log
/// determinant is the sum of their principal logarithms.
fn logdet_complex_symmetric(m: &DMatrix<Complex64>) -> Result<Complex64> {
    let n = m.nrows();
    let mut l = DMatrix::<Complex64>::zeros(n, n);
    let mut d = vec![c(0.0, 0.0); n];
    for j in 0..n {
        let mut dj = m[(j, j)];
        for k in 0..j {
            dj -= l[(j, k)] * l[(j, k)] * d[k];
        }
        if dj.norm() < 1e-200 {
            return Err(Error::SingularMatrix);
        }
        d[j] = dj;
        for i in (j + 1)..n {
            let mut v = m[(i, j)];
            for k in 0..j {
                v -= l[(i, k)] * l[(j, k)] * d[k];
            }
            l[(i, j)] = v / dj;
        }
    }
    Ok(d.iter().map(|z| z.ln()).sum())
}

fn inverse_symmetric(m: &DMatrix<Complex64>) -> Result<DMatrix<Complex64>> {
    let inv = m.clone().lu().try_inverse().ok_or(Error::SingularMatrix)?;
    Ok((&inv + inv.transpose()).map(|z| z * 0.5))
}

/// The time–frequency shift (x,y)f(t) = e^{2πi y·t} f(t+x) on packet data:
/// A is unchanged, w ← w − Ax + iy, r ← r + 2π wᵀx − π xᵀAx.
pub fn tf_shift_xy(x: &[f64], y: &[f64], f: &PacketSum) -> Result<PacketSum> {
    let d = x.len();
    if y.len() != d {
        return Err(Error::DimensionMismatch(y.len(), d));
    }
    f.check_dim(d)?;
    let xv = DVector::from_iterator(d, x.iter().map(|&v| c(v, 0.0)));
    let yv = DVector::from_iterator(d, y.iter().map(|&v| c(0.0, v)));
    let packets = f
        .packets
        .iter()
        .map(|p| {
            let ax = &p.a * &xv;
            let w = &p.w - &ax + &yv;
            let r = p.r + 2.0 * PI * p.w.dot(&xv) - PI * ax.dot(&xv);
            GaussianPacket { a: p.a.clone(), w, r }
        })
        .collect();
    Ok(PacketSum { packets })
}

/// Shift by a group element (coordinates converted through the scalar).
pub fn tf_shift<S: Scalar>(g: &GroupElement<S>, f: &PacketSum) -> Result<PacketSum> {
    let x: Vec<f64> = g.x().iter().map(|v| v.to_f64()).collect();
    let y: Vec<f64> = g.y().iter().map(|v| v.to_f64()).collect();
    tf_shift_xy(&x, &y, f)
}

/// Action of a twisted-group-ring element: Σ λ_g·(g·f), coefficients
/// folded into r through the log.
pub fn apply_algebra<S: Scalar>(theta: &AlgebraElement<S>, f: &PacketSum) -> Result<PacketSum> {
    if let Some(d) = f.dim() {
        if theta.n() != d {
            return Err(Error::DimensionMismatch(theta.n(), d));
        }
    }
    let mut out = PacketSum::zero();
    for (g, coeff) in theta.terms() {
        let shifted = tf_shift(g, f)?;
        out = out.add(&shifted.scale(coeff.value()));
    }
    Ok(out)
}

/// Fourier transform in the e^{+2πi t·s} sign convention:
/// (Ff)(t) = ∫ e^{2πi t·s} f(s) ds; `inverse` flips the kernel sign.
pub fn fourier(f: &PacketSum, inverse: bool) -> Result<PacketSum> {
    let packets = f
        .packets
        .iter()
        .map(|p| {
            let ainv = inverse_symmetric(&p.a)?;
            let logdet = logdet_complex_symmetric(&p.a)?;
            let aw = &ainv * &p.w;
            let quad = aw.dot(&p.w);
            let iunit = if inverse { c(0.0, -1.0) } else { c(0.0, 1.0) };
            Ok(GaussianPacket::unchecked(
                ainv.clone(),
                aw.map(|z| iunit * z),
                p.r + PI * quad - 0.5 * logdet,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PacketSum { packets })
}

/// The block-swap matrix J_d = [[0, I], [I, 0]] (d even).
pub fn j_matrix(d: usize) -> Result<DMatrix<f64>> {
    if !d.is_multiple_of(2) {
        return Err(Error::DimensionMismatch(d, d + 1));
    }
    let h = d / 2;
    Ok(DMatrix::from_fn(d, d, |i, j| {
        if (i < h && j == i + h) || (i >= h && j == i - h) {
            1.0
        } else {
            0.0
        }
    }))
}

/// Chirp multiplication f(t) ↦ e^{−sign·πi Jt·t} f(t): A ← A + sign·iJ,
/// with Re A untouched. `sign = +1` is the pipeline's chirp factor.
pub fn chirp(f: &PacketSum, sign: i32) -> Result<PacketSum> {
    let d = f.dim().unwrap_or(0);
    if f.is_zero() {
        return Ok(PacketSum::zero());
    }
    let j = j_matrix(d)?;
    let ij = j.map(|v| c(0.0, sign as f64 * v));
    let packets = f
        .packets
        .iter()
        .map(|p| GaussianPacket::unchecked(&p.a + &ij, p.w.clone(), p.r))
        .collect();
    Ok(PacketSum { packets })
}

/// Substitution with a real invertible matrix plus a scalar factor:
/// (uf)(t) = scale·f(Mt), i.e. A ← MᵀAM, w ← Mᵀw, r ← r + log(scale).
pub fn linear_substitute(f: &PacketSum, m: &DMatrix<f64>, scale: Complex64) -> Result<PacketSum> {
    if let Some(d) = f.dim() {
        if m.nrows() != d || m.ncols() != d {
            return Err(Error::DimensionMismatch(m.nrows(), d));
        }
    }
    if m.determinant().abs() < 1e-14 {
        return Err(Error::SingularMatrix);
    }
    let mc = m.map(|v| c(v, 0.0));
    let ln = scale.ln();
    let packets = f
        .packets
        .iter()
        .map(|p| {
            GaussianPacket::unchecked(
                mc.transpose() * &p.a * &mc,
                mc.transpose() * &p.w,
                p.r + ln,
            )
        })
        .collect();
    Ok(PacketSum { packets })
}

/// (f ⊗ g)(s, t) = f(s)·g(t): block-diagonal A, concatenated w, summed r,
/// distributing over sums.
pub fn tensor(f: &PacketSum, g: &PacketSum) -> PacketSum {
    let mut packets = Vec::new();
    for p in &f.packets {
        for q in &g.packets {
            let d = p.dim() + q.dim();
            let mut a = DMatrix::<Complex64>::zeros(d, d);
            a.view_mut((0, 0), (p.dim(), p.dim())).copy_from(&p.a);
            a.view_mut((p.dim(), p.dim()), (q.dim(), q.dim())).copy_from(&q.a);
            let mut w = DVector::<Complex64>::zeros(d);
            w.rows_mut(0, p.dim()).copy_from(&p.w);
            w.rows_mut(p.dim(), q.dim()).copy_from(&q.w);
            packets.push(GaussianPacket { a, w, r: p.r + q.r });
        }
    }
    PacketSum { packets }
}

/// Closed-form ⟨f, g⟩ = ∫ f(t)·conj(g(t)) dt, summed bilinearly over the
/// packet lists: with S = A₁ + Ā₂ and v = w₁ + w̄₂ the pairwise value is
/// exp(r₁ + r̄₂ + π vᵀS⁻¹v − ½ log det S).
pub fn inner_product(f: &PacketSum, g: &PacketSum) -> Result<Complex64> {
    if let (Some(df), Some(dg)) = (f.dim(), g.dim()) {
        if df != dg {
            return Err(Error::DimensionMismatch(df, dg));
        }
    }
    let mut acc = c(0.0, 0.0);
    for p in &f.packets {
        for q in &g.packets {
            let s = &p.a + q.a.map(|z| z.conj());
            let v = &p.w + q.w.map(|z| z.conj());
            let sinv = inverse_symmetric(&s)?;
            let quad = (&sinv * &v).dot(&v);
            let logdet = logdet_complex_symmetric(&s)?;
            acc += (p.r + q.r.conj() + PI * quad - 0.5 * logdet).exp();
        }
    }
    Ok(acc)
}

pub fn norm(f: &PacketSum) -> Result<f64> {
    Ok(inner_product(f, f)?.re.max(0.0).sqrt())
}

/// ‖f − g‖₂, for operator-identity checks.
pub fn l2_distance(f: &PacketSum, g: &PacketSum) -> Result<f64> {
    norm(&f.sub(g))
}

// ---------------------------------------------------------------------
// JSON form: {"d":1,"A":[[{"re":1.0,"im":0.0}]],"w":[…],"r":{…}}
// ---------------------------------------------------------------------

#[derive(Serialize, Deserialize, Clone, Copy)]
pub struct ComplexJson {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexJson {
    fn from(z: Complex64) -> Self {
        ComplexJson { re: z.re, im: z.im }
    }
}

impl From<ComplexJson> for Complex64 {
    fn from(z: ComplexJson) -> Self {
        c(z.re, z.im)
    }
}

#[derive(Serialize, Deserialize)]
struct PacketJson {
    d: usize,
    #[serde(rename = "A")]
    a: Vec<Vec<ComplexJson>>,
    w: Vec<ComplexJson>,
    r: ComplexJson,
}

impl Serialize for GaussianPacket {
    fn serialize<Ser: serde::Serializer>(
        &self,
        serializer: Ser,
    ) -> std::result::Result<Ser::Ok, Ser::Error> {
        let d = self.dim();
        PacketJson {
            d,
            a: (0..d)
                .map(|i| (0..d).map(|j| self.a[(i, j)].into()).collect())
                .collect(),
            w: self.w.iter().map(|&z| z.into()).collect(),
            r: self.r.into(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GaussianPacket {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = PacketJson::deserialize(deserializer)?;
        if raw.a.len() != raw.d
            || raw.a.iter().any(|row| row.len() != raw.d)
            || raw.w.len() != raw.d
        {
            return Err(D::Error::custom("packet shape mismatch"));
        }
        let a = DMatrix::from_fn(raw.d, raw.d, |i, j| raw.a[i][j].into());
        let w = DVector::from_iterator(raw.d, raw.w.iter().map(|&z| z.into()));
        GaussianPacket::new(a, w, raw.r.into()).map_err(D::Error::custom)
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

    #[test]
    fn standard_gaussian_norm_is_2_pow_minus_quarter() {
        // ⟨φ,φ⟩ = ∫ e^{-2πt²} dt = 2^{-1/2} on ℝ¹
        let phi = PacketSum::standard(1);
        let ip = inner_product(&phi, &phi).unwrap();
        assert!((ip - c(0.5f64.sqrt(), 0.0)).norm() < 1e-14);
    }

    #[test]
    fn shift_of_standard_gaussian() {
        // g = (x, 0): w = -x, r = -π‖x‖² on φ
        let phi = PacketSum::standard(1);
        let shifted = tf_shift_xy(&[0.75], &[0.0], &phi).unwrap();
        let p = &shifted.packets()[0];
        assert!((p.w()[0] - c(-0.75, 0.0)).norm() < 1e-15);
        assert!((p.r() - c(-PI * 0.5625, 0.0)).norm() < 1e-15);
        // identity shift is a no-op
        let same = tf_shift(&GroupElement::<Rat>::identity(1), &phi).unwrap();
        assert!(l2_distance(&same, &phi).unwrap() < 1e-15);
    }

    #[test]
    fn shifts_are_unitary_even_with_nonzero_w() {
        let p = GaussianPacket::new(
            DMatrix::from_row_slice(1, 1, &[c(1.3, 0.4)]),
            DVector::from_row_slice(&[c(0.2, -0.7)]),
            c(0.1, 0.3),
        )
        .unwrap();
        let f = PacketSum::from_packet(p);
        let before = norm(&f).unwrap();
        let after = norm(&tf_shift_xy(&[0.6], &[-1.1], &f).unwrap()).unwrap();
        assert!((before - after).abs() < 1e-12 * before.max(1.0));
    }

    #[test]
    fn fourier_fixes_standard_gaussian_and_is_unitary() {
        let phi = PacketSum::standard(2);
        let hat = fourier(&phi, false).unwrap();
        assert!(l2_distance(&hat, &phi).unwrap() < 1e-12);
        let p = GaussianPacket::new(
            DMatrix::from_row_slice(1, 1, &[c(0.8, -0.3)]),
            DVector::from_row_slice(&[c(-0.1, 0.5)]),
            c(0.0, 0.2),
        )
        .unwrap();
        let f = PacketSum::from_packet(p);
        let hat = fourier(&f, false).unwrap();
        assert!((norm(&hat).unwrap() - norm(&f).unwrap()).abs() < 1e-10);
        // round trip through the inverse kernel
        let back = fourier(&hat, true).unwrap();
        assert!(l2_distance(&back, &f).unwrap() < 1e-10);
    }

    #[test]
    fn chirp_is_invertible_and_pointwise_correct() {
        let f = PacketSum::standard(2);
        let ch = chirp(&f, 1).unwrap();
        let back = chirp(&ch, -1).unwrap();
        assert!(l2_distance(&back, &f).unwrap() < 1e-14);
        // pointwise: e^{-πi·Jt·t}·φ(t)
        let j = j_matrix(2).unwrap();
        for t in [[0.3, -0.4], [1.0, 0.25], [-0.7, -0.2]] {
            let tv = nalgebra::DVector::from_row_slice(&t);
            let jtt = (&j * &tv).dot(&tv);
            let expected = f.eval(&t) * (c(0.0, -PI * jtt)).exp();
            assert!((ch.eval(&t) - expected).norm() < 1e-12);
        }
        assert!(matches!(chirp(&PacketSum::standard(1), 1), Err(Error::DimensionMismatch(..))));
    }

    #[test]
    fn dilation_substitution_preserves_norm() {
        // M = J/√2, scale = 2^{-d/4} on ℝ²: A = I/2, r = -(1/2)·ln 2
        let f = PacketSum::standard(2);
        let m = j_matrix(2).unwrap() / 2.0f64.sqrt();
        let u = linear_substitute(&f, &m, c(2.0f64.powf(-0.5), 0.0)).unwrap();
        let p = &u.packets()[0];
        assert!((p.a()[(0, 0)] - c(0.5, 0.0)).norm() < 1e-15);
        assert!((p.a()[(1, 1)] - c(0.5, 0.0)).norm() < 1e-15);
        assert!((p.r() - c(-0.5 * 2.0f64.ln(), 0.0)).norm() < 1e-15);
        assert!((norm(&u).unwrap() - norm(&f).unwrap()).abs() < 1e-12);
        // composition law
        let m1 = DMatrix::from_row_slice(2, 2, &[1.0, 0.5, 0.0, 2.0]);
        let m2 = DMatrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.3]);
        let one = c(1.0, 0.0);
        let ab = linear_substitute(&linear_substitute(&f, &m2, one).unwrap(), &m1, one).unwrap();
        let combined = linear_substitute(&f, &(&m2 * &m1), one).unwrap();
        assert!(l2_distance(&ab, &combined).unwrap() < 1e-12);
    }

    #[test]
    fn fourier_fourth_power_fixes_packet_data() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        for _ in 0..50 {
            let d = 1 + rng.gen_range(0..2usize);
            let a = {
                let mut m = DMatrix::<Complex64>::identity(d, d);
                for i in 0..d {
                    m[(i, i)] += c(rng.gen_range(-0.3..0.8), rng.gen_range(-0.5..0.5));
                }
                if d == 2 {
                    let o = c(rng.gen_range(-0.15..0.15), rng.gen_range(-0.3..0.3));
                    m[(0, 1)] = o;
                    m[(1, 0)] = o;
                }
                m
            };
            let w = DVector::from_fn(d, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            let f = PacketSum::from_packet(
                GaussianPacket::new(a, w, c(rng.gen_range(-0.4..0.4), 0.0)).unwrap(),
            );
            let mut cur = f.clone();
            for _ in 0..4 {
                cur = fourier(&cur, false).unwrap();
            }
            let p0 = &f.packets()[0];
            let p4 = &cur.packets()[0];
            let da = (p4.a() - p0.a()).map(|z| z.norm()).max();
            let dw = (p4.w() - p0.w()).map(|z| z.norm()).max();
            let dr = (p4.r() - p0.r()).norm();
            assert!(da + dw + dr < 1e-9, "Fourier^4 drift {da:.2e}/{dw:.2e}/{dr:.2e}");
        }
    }

    #[test]
    fn tensor_factorizes_inner_products() {
        let phi1 = PacketSum::standard(1);
        let p = GaussianPacket::new(
            DMatrix::from_row_slice(1, 1, &[c(1.5, 0.2)]),
            DVector::from_row_slice(&[c(0.0, 0.4)]),
            c(-0.1, 0.0),
        )
        .unwrap();
        let g1 = PacketSum::from_packet(p);
        let t = tensor(&phi1, &g1);
        assert_eq!(t.dim(), Some(2));
        let lhs = inner_product(&t, &tensor(&g1, &phi1)).unwrap();
        let rhs = inner_product(&phi1, &g1).unwrap() * inner_product(&g1, &phi1).unwrap();
        assert!((lhs - rhs).norm() < 1e-12);
        // φ_1 ⊗ φ_1 = φ_2
        let t2 = tensor(&phi1, &phi1);
        assert!(l2_distance(&t2, &PacketSum::standard(2)).unwrap() < 1e-14);
    }

    #[test]
    fn widely_separated_shifts_are_numerically_orthogonal() {
        let phi = PacketSum::standard(1);
        let far = tf_shift(&ge_q((10, 1), (0, 1)), &phi).unwrap();
        assert!(inner_product(&far, &phi).unwrap().norm() < 1e-12);
        // |⟨(x,y)φ, φ⟩| = 2^{-1/2}·e^{-π(x²+y²)/2}
        let g = ge_q((1, 2), (1, 1));
        let ip = inner_product(&tf_shift(&g, &phi).unwrap(), &phi).unwrap();
        let expected = 0.5f64.sqrt() * (-PI * (0.25 + 1.0) / 2.0).exp();
        assert!((ip.norm() - expected).abs() < 1e-12);
    }

    #[test]
    fn algebra_action_is_linear() {
        let phi = PacketSum::standard(1);
        let theta = AlgebraElement::from_terms(
            1,
            vec![
                (ge_q((1, 2), (0, 1)), c(2.0, 0.0)),
                (ge_q((0, 1), (1, 1)), c(0.0, 1.0)),
            ],
        )
        .unwrap();
        let out = apply_algebra(&theta, &phi).unwrap();
        assert_eq!(out.packets().len(), 2);
        let direct = tf_shift(&ge_q((1, 2), (0, 1)), &phi)
            .unwrap()
            .scale(c(2.0, 0.0))
            .add(&tf_shift(&ge_q((0, 1), (1, 1)), &phi).unwrap().scale(c(0.0, 1.0)));
        assert!(l2_distance(&out, &direct).unwrap() < 1e-13);
        let one = AlgebraElement::<Rat>::one(1);
        assert!(l2_distance(&apply_algebra(&one, &phi).unwrap(), &phi).unwrap() < 1e-14);
    }

    #[test]
    fn packet_json_roundtrip() {
        let p = GaussianPacket::new(
            DMatrix::from_row_slice(1, 1, &[c(1.0, 0.25)]),
            DVector::from_row_slice(&[c(0.5, -1.0)]),
            c(0.0, 0.1),
        )
        .unwrap();
        let s = serde_json::to_string(&p).unwrap();
        let back: GaussianPacket = serde_json::from_str(&s).unwrap();
        assert!((back.a()[(0, 0)] - p.a()[(0, 0)]).norm() == 0.0);
        assert!((back.w()[0] - p.w()[0]).norm() == 0.0);
        // invalid packets are rejected on deserialize
        let bad = r#"{"d":1,"A":[[{"re":-1.0,"im":0.0}]],"w":[{"re":0,"im":0}],"r":{"re":0,"im":0}}"#;
        assert!(serde_json::from_str::<GaussianPacket>(bad).is_err());
    }
}
