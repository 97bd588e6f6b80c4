//! Numerical certification that finite sets of time–frequency translates
//! of a window along a coset of a discrete subgroup are linearly
//! independent: enumerate the coset window, assemble the Hermitian Gram
//! matrix from closed-form inner products, and certify through the
//! smallest eigenvalue with a residual-backed margin.
//!
//! A failed certification is reported as `inconclusive`, never as
//! "dependent": for windows along a discrete subgroup independence always
//! holds, so a tiny λ_min is a statement about the numerics, not the math.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::gaussian::{self, PacketSum};
use crate::group::GroupElement;
use crate::scalar::Scalar;
use crate::subgroup::DiscreteSubgroup;

/// Certification margin: λ_min must exceed κ times the eigenpair
/// residual ‖Gv − λ_min·v‖₂.
pub const CERTIFICATION_MARGIN: f64 = 10.0;

/// Worker pool honoring the `HEISENLAB_THREADS` cap.
fn pool() -> &'static rayon::ThreadPool {
    static POOL: OnceLock<rayon::ThreadPool> = OnceLock::new();
    POOL.get_or_init(|| {
        let threads = std::env::var("HEISENLAB_THREADS")
            .ok()
            .and_then(|v| v.parse::<usize>().ok())
            .unwrap_or(0);
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("build worker pool")
    })
}

/// A finite window on the coset g + G: all points g + Σ mᵢgᵢ with
/// ‖Σ mᵢgᵢ‖₂ ≤ radius, enumerated in lexicographic order of
/// (m₁, …, m_r), capped at `max_points`.
#[derive(Clone, Debug)]
pub struct CosetWindow<S: Scalar> {
    pub subgroup: DiscreteSubgroup<S>,
    pub offset: GroupElement<S>,
    pub radius: f64,
    pub max_points: usize,
}

#[derive(Clone, Debug)]
pub struct Enumeration<S: Scalar> {
    pub points: Vec<GroupElement<S>>,
    pub truncated: bool,
}

impl<S: Scalar> CosetWindow<S> {
    pub fn enumerate(&self) -> Result<Enumeration<S>> {
        if self.offset.n() != self.subgroup.n() {
            return Err(Error::DimensionMismatch(self.offset.n(), self.subgroup.n()));
        }
        let r = self.subgroup.rank();
        if r == 0 {
            return Ok(Enumeration { points: vec![self.offset.clone()], truncated: false });
        }
        // ‖Σmᵢgᵢ‖₂ ≥ σ_min·‖m‖₂, so the coefficient box is bounded.
        let gmat = self.subgroup.generator_matrix().to_f64();
        let sigma_min = gmat
            .clone()
            .svd(false, false)
            .singular_values
            .iter()
            .fold(f64::INFINITY, |a, &b| a.min(b));
        if sigma_min.is_nan() || sigma_min <= 0.0 {
            return Err(Error::DependentGenerators);
        }
        let bound = (self.radius / sigma_min + 1e-9).floor() as i64;
        let mut points = Vec::new();
        let mut truncated = false;
        let mut m = vec![-bound; r];
        'outer: loop {
            let lattice_part = self.subgroup.point(
                &m.to_vec(),
            );
            let norm2: f64 = lattice_part
                .to_f64_flat()
                .iter()
                .map(|v| v * v)
                .sum::<f64>()
                .sqrt();
            if norm2 <= self.radius + 1e-12 {
                if points.len() == self.max_points {
                    truncated = true;
                } else {
                    points.push(self.offset.translate(&lattice_part)?);
                }
            }
            // advance lexicographically: last index varies fastest, so the
            // output order is lexicographic in (m₁, …, m_r)
            let mut i = r;
            loop {
                if i == 0 {
                    break 'outer;
                }
                i -= 1;
                m[i] += 1;
                if m[i] <= bound {
                    break;
                }
                m[i] = -bound;
            }
        }
        Ok(Enumeration { points, truncated })
    }
}

/// Hermitian Gram matrix G_{λμ} = ⟨ρ(λ)f, ρ(μ)f⟩ from closed-form inner
/// products, symmetrized to kill round-off asymmetry. Entries are
/// computed in parallel; the result is schedule-independent.
pub fn gram_matrix<S: Scalar>(
    points: &[GroupElement<S>],
    f: &PacketSum,
) -> Result<DMatrix<Complex64>> {
    let m = points.len();
    let shifted: Vec<PacketSum> = points
        .iter()
        .map(|p| gaussian::tf_shift(p, f))
        .collect::<Result<_>>()?;
    let entries: Vec<Complex64> = pool().install(|| {
        (0..m * m)
            .into_par_iter()
            .map(|idx| {
                let (i, j) = (idx / m, idx % m);
                if i <= j {
                    gaussian::inner_product(&shifted[i], &shifted[j])
                } else {
                    Ok(Complex64::new(0.0, 0.0))
                }
            })
            .collect::<Result<Vec<_>>>()
    })?;
    let mut g = DMatrix::<Complex64>::zeros(m, m);
    for i in 0..m {
        for j in i..m {
            let v = entries[i * m + j];
            g[(i, j)] = v;
            g[(j, i)] = v.conj();
        }
    }
    // Hermitian symmetrization (diagonal imaginary parts vanish)
    let gh = g.adjoint();
    Ok((&g + &gh).map(|z| z * 0.5))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "certified-independent")]
    CertifiedIndependent,
    #[serde(rename = "inconclusive")]
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::CertifiedIndependent => write!(f, "certified-independent"),
            Verdict::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GramReport {
    /// The enumerated points, in order, as displayed coordinates.
    pub points: Vec<String>,
    pub num_points: usize,
    /// Ascending real eigenvalues of the Hermitian Gram matrix.
    pub eigenvalues: Vec<f64>,
    pub lambda_min: f64,
    /// ‖G·v − λ_min·v‖₂ for the computed smallest eigenpair.
    pub residual: f64,
    pub cond: f64,
    pub margin: f64,
    pub verdict: Verdict,
    pub truncated: bool,
}

/// Hermitian eigendecomposition with ascending eigenvalues.
fn hermitian_eigen(g: &DMatrix<Complex64>) -> (Vec<f64>, DMatrix<Complex64>) {
    let se = g.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..se.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| se.eigenvalues[a].total_cmp(&se.eigenvalues[b]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| se.eigenvalues[i]).collect();
    let m = g.nrows();
    let vectors = DMatrix::from_fn(m, m, |r, c| se.eigenvectors[(r, order[c])]);
    (eigenvalues, vectors)
}

/// Certify linear independence of {ρ(λ)f : λ ∈ points} via the Gram
/// spectrum. `certified-independent` requires λ_min > margin·residual.
pub fn certify<S: Scalar>(
    points: &[GroupElement<S>],
    f: &PacketSum,
    truncated: bool,
) -> Result<GramReport> {
    if points.is_empty() {
        return Err(Error::ZeroElement);
    }
    let g = gram_matrix(points, f)?;
    let (eigenvalues, vectors) = hermitian_eigen(&g);
    let lambda_min = eigenvalues[0];
    let lambda_max = *eigenvalues.last().unwrap();
    let v: DVector<Complex64> = vectors.column(0).into_owned();
    let residual = (&g * &v - v.map(|z| z * Complex64::new(lambda_min, 0.0))).norm();
    let verdict = if lambda_min > CERTIFICATION_MARGIN * residual {
        Verdict::CertifiedIndependent
    } else {
        Verdict::Inconclusive
    };
    let cond = if lambda_min > 0.0 { lambda_max / lambda_min } else { f64::INFINITY };
    Ok(GramReport {
        points: points.iter().map(|p| p.to_string()).collect(),
        num_points: points.len(),
        eigenvalues,
        lambda_min,
        residual,
        cond,
        margin: CERTIFICATION_MARGIN,
        verdict,
        truncated,
    })
}

/// Convenience: enumerate a window and certify it.
pub fn certify_window<S: Scalar>(w: &CosetWindow<S>, f: &PacketSum) -> Result<GramReport> {
    let e = w.enumerate()?;
    certify(&e.points, f, e.truncated)
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub a: f64,
    pub b: f64,
    pub offset_x: f64,
    pub offset_y: f64,
    pub num_points: usize,
    pub lambda_min: f64,
    pub cond: f64,
    pub residual: f64,
    pub verdict: Verdict,
}

pub const SWEEP_CSV_HEADER: &str =
    "a,b,offset_x,offset_y,num_points,lambda_min,cond,residual,verdict";

impl SweepRow {
    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.a,
            self.b,
            self.offset_x,
            self.offset_y,
            self.num_points,
            self.lambda_min,
            self.cond,
            self.residual,
            self.verdict
        )
    }
}

/// λ_min and condition number across the separable lattice family
/// aℤ×bℤ (ambient n = 1) for each grid size: a k×k grid uses indices
/// centered at the origin. Deterministic row order: (a, b, size).
pub fn density_sweep(
    window: &PacketSum,
    a_values: &[f64],
    b_values: &[f64],
    grid_sizes: &[usize],
    offset: (f64, f64),
) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::new();
    for &a in a_values {
        for &b in b_values {
            if !(a > 0.0 && b > 0.0) {
                return Err(Error::Parse("lattice steps must be positive".into()));
            }
            for &size in grid_sizes {
                let lo = -((size as i64 - 1) / 2);
                let points: Vec<GroupElement<f64>> = (0..size)
                    .flat_map(|i| (0..size).map(move |j| (i, j)))
                    .map(|(i, j)| {
                        GroupElement::new(
                            vec![offset.0 + a * (lo + i as i64) as f64],
                            vec![offset.1 + b * (lo + j as i64) as f64],
                        )
                    })
                    .collect();
                let report = certify(&points, window, false)?;
                rows.push(SweepRow {
                    a,
                    b,
                    offset_x: offset.0,
                    offset_y: offset.1,
                    num_points: report.num_points,
                    lambda_min: report.lambda_min,
                    cond: report.cond,
                    residual: report.residual,
                    verdict: report.verdict,
                });
            }
        }
    }
    Ok(rows)
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(SWEEP_CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.csv_line());
        out.push('\n');
    }
    out
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
    fn enumeration_counts_match_geometry() {
        let w = CosetWindow {
            subgroup: DiscreteSubgroup::<Rat>::standard_lattice(1),
            offset: GroupElement::identity(1),
            radius: 1.5,
            max_points: 100,
        };
        let e = w.enumerate().unwrap();
        assert_eq!(e.points.len(), 9); // {−1,0,1}²
        assert!(!e.truncated);

        let single = CosetWindow {
            subgroup: DiscreteSubgroup::<Rat>::standard_lattice(1),
            offset: ge_q((1, 3), (0, 1)),
            radius: 0.0,
            max_points: 10,
        };
        let e = single.enumerate().unwrap();
        assert_eq!(e.points.len(), 1);
        assert_eq!(e.points[0], ge_q((1, 3), (0, 1)));

        let rank1 = CosetWindow {
            subgroup: DiscreteSubgroup::new(1, vec![ge_q((1, 1), (0, 1))]).unwrap(),
            offset: GroupElement::identity(1),
            radius: 2.5,
            max_points: 100,
        };
        assert_eq!(rank1.enumerate().unwrap().points.len(), 5);
    }

    #[test]
    fn enumeration_is_lexicographic_and_truncation_flagged() {
        let w = CosetWindow {
            subgroup: DiscreteSubgroup::<Rat>::standard_lattice(1),
            offset: GroupElement::identity(1),
            radius: 1.5,
            max_points: 4,
        };
        let e = w.enumerate().unwrap();
        assert!(e.truncated);
        assert_eq!(e.points.len(), 4);
        // lexicographic in (m₁, m₂): (−1,−1), (−1,0), (−1,1), (0,−1)
        assert_eq!(e.points[0], ge_q((-1, 1), (-1, 1)));
        assert_eq!(e.points[1], ge_q((-1, 1), (0, 1)));
        assert_eq!(e.points[2], ge_q((-1, 1), (1, 1)));
        assert_eq!(e.points[3], ge_q((0, 1), (-1, 1)));
    }

    #[test]
    fn gram_of_singleton_is_the_norm_square() {
        let phi = PacketSum::standard(1);
        let g = gram_matrix(&[GroupElement::<Rat>::identity(1)], &phi).unwrap();
        assert!((g[(0, 0)].re - 0.5f64.sqrt()).abs() < 1e-14);
        assert!(g[(0, 0)].im.abs() < 1e-15);
    }

    #[test]
    fn distant_shifts_give_near_identity_gram() {
        let phi = PacketSum::standard(1);
        let pts = [GroupElement::<Rat>::identity(1), ge_q((10, 1), (0, 1))];
        let g = gram_matrix(&pts, &phi).unwrap();
        assert!(g[(0, 1)].norm() < 1e-12);
        let report = certify(&pts, &phi, false).unwrap();
        assert!((report.lambda_min - 0.5f64.sqrt()).abs() < 1e-10);
        assert_eq!(report.verdict, Verdict::CertifiedIndependent);
        // diagonal constant: shifts are unitary
        assert!((g[(0, 0)] - g[(1, 1)]).norm() < 1e-12);
    }

    #[test]
    fn grid_certification_and_psd() {
        let phi = PacketSum::standard(1);
        let w = CosetWindow {
            subgroup: DiscreteSubgroup::<Rat>::standard_lattice(1),
            offset: GroupElement::identity(1),
            radius: 1.5,
            max_points: 100,
        };
        let report = certify_window(&w, &phi).unwrap();
        assert_eq!(report.num_points, 9);
        assert_eq!(report.verdict, Verdict::CertifiedIndependent);
        assert!(report.lambda_min > 1e-8);
        assert!(report.eigenvalues[0] >= -1e-12);
        assert!(report.lambda_min > report.margin * report.residual);
        // ascending order
        for pair in report.eigenvalues.windows(2) {
            assert!(pair[0] <= pair[1] + 1e-15);
        }
    }

    #[test]
    fn subset_monotonicity_of_lambda_min() {
        // eigenvalue interlacing: λ_min grows when points are removed
        let phi = PacketSum::standard(1);
        let big = CosetWindow {
            subgroup: DiscreteSubgroup::<Rat>::standard_lattice(1),
            offset: GroupElement::identity(1),
            radius: 1.5,
            max_points: 100,
        }
        .enumerate()
        .unwrap();
        let small: Vec<_> = big.points[..4].to_vec();
        let rb = certify(&big.points, &phi, false).unwrap();
        let rs = certify(&small, &phi, false).unwrap();
        assert!(rs.lambda_min >= rb.lambda_min - 1e-12);
    }

    #[test]
    fn coset_offset_preserves_spectrum() {
        let phi = PacketSum::standard(1);
        let base = CosetWindow {
            subgroup: DiscreteSubgroup::<Rat>::standard_lattice(1),
            offset: GroupElement::identity(1),
            radius: 1.01,
            max_points: 100,
        }
        .enumerate()
        .unwrap();
        let shifted: Vec<GroupElement<Rat>> = base
            .points
            .iter()
            .map(|p| p.translate(&ge_q((2, 3), (-1, 7))).unwrap())
            .collect();
        let ra = certify(&base.points, &phi, false).unwrap();
        let rb = certify(&shifted, &phi, false).unwrap();
        for (a, b) in ra.eigenvalues.iter().zip(rb.eigenvalues.iter()) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn sweep_rows_are_deterministic() {
        let phi = PacketSum::standard(1);
        let rows1 = density_sweep(&phi, &[1.0, 2.0], &[1.0, 2.0], &[2, 3], (0.0, 0.0)).unwrap();
        let rows2 = density_sweep(&phi, &[1.0, 2.0], &[1.0, 2.0], &[2, 3], (0.0, 0.0)).unwrap();
        assert_eq!(sweep_csv(&rows1), sweep_csv(&rows2));
        assert_eq!(rows1.len(), 8);
        // sparse lattice: λ_min close to ‖φ‖² = 2^{-1/2}
        let sparse = rows1
            .iter()
            .find(|r| r.a == 2.0 && r.b == 2.0 && r.num_points == 9)
            .unwrap();
        let norm2 = 0.5f64.sqrt();
        assert!((sparse.lambda_min - norm2).abs() / norm2 < 0.10);
        assert!(rows1.iter().all(|r| r.verdict == Verdict::CertifiedIndependent));
    }
}
