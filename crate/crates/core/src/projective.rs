//! Points of `P(F^n)` in homogeneous coordinates, the angle metric, the
//! projectivized action of invertible linear maps, and affine charts.
//!
//! Representatives are stored normalized: unit Euclidean norm with the
//! largest-modulus coordinate real and positive. That fixes the sign over R
//! and the phase over C, so two points are equal exactly when their stored
//! vectors are.

use alloc::vec::Vec;
use num_complex::Complex64;

use crate::linalg::{self, is_invertible, Field, Matrix};
use crate::{Error, Result, DEFAULT_TOL};

#[derive(Debug, Clone, PartialEq)]
pub struct ProjPoint {
    field: Field,
    homog: Vec<Complex64>,
}

impl ProjPoint {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.homog.len()
    }

    /// The stored normalized representative.
    pub fn homog(&self) -> &[Complex64] {
        &self.homog
    }

    pub fn proj_dist(&self, other: &ProjPoint) -> Result<f64> {
        proj_dist(self, other)
    }

    pub fn approx_eq(&self, other: &ProjPoint, tol: f64) -> bool {
        matches!(proj_dist(self, other), Ok(d) if d <= tol)
    }
}

/// Class of a nonzero vector in `P(F^n)`.
pub fn normalize(field: Field, v: &[Complex64]) -> Result<ProjPoint> {
    let n = v.len();
    if !(linalg::MIN_DIM..=linalg::MAX_DIM).contains(&n) {
        return Err(Error::DimensionOutOfRange(n));
    }
    if v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFiniteEntry);
    }
    if field == Field::Real && v.iter().any(|z| z.im != 0.0) {
        return Err(Error::FieldMismatch);
    }
    let nv = linalg::norm(v);
    if nv == 0.0 {
        return Err(Error::ZeroVector);
    }
    let mut homog = linalg::scale(v, Complex64::new(1.0 / nv, 0.0));
    // phase/sign convention: largest-modulus coordinate real positive
    let (k, _) = homog
        .iter()
        .enumerate()
        .fold((0, -1.0), |(bi, bm), (i, z)| {
            let m = z.norm();
            if m > bm {
                (i, m)
            } else {
                (bi, bm)
            }
        });
    let phase = homog[k] / homog[k].norm();
    let inv_phase = phase.conj();
    for z in homog.iter_mut() {
        *z *= inv_phase;
    }
    homog[k] = Complex64::new(homog[k].re, 0.0);
    if field == Field::Real {
        for z in homog.iter_mut() {
            z.im = 0.0;
        }
    }
    Ok(ProjPoint { field, homog })
}

pub fn normalize_real(v: &[f64]) -> Result<ProjPoint> {
    normalize(Field::Real, &linalg::from_real(v))
}

/// Angle metric `arccos |⟨a, b⟩|` on unit representatives, valued in [0, π/2].
pub fn proj_dist(a: &ProjPoint, b: &ProjPoint) -> Result<f64> {
    if a.field != b.field {
        return Err(Error::FieldMismatch);
    }
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()));
    }
    // atan2 of the orthogonal component: stable near 0 where acos|<a,b>|
    // cannot resolve below ~sqrt(eps)
    let c = linalg::dot(a.homog(), b.homog());
    let mut w = b.homog().to_vec();
    for (wi, ai) in w.iter_mut().zip(a.homog()) {
        *wi = *wi - c * ai;
    }
    Ok(libm::atan2(linalg::norm(&w), c.norm()))
}

/// Image of `p` under the projectivization of the invertible linear map `a`.
pub fn projectivize_linear(a: &Matrix, p: &ProjPoint) -> Result<ProjPoint> {
    projectivize_linear_tol(a, p, DEFAULT_TOL)
}

pub fn projectivize_linear_tol(a: &Matrix, p: &ProjPoint, tol: f64) -> Result<ProjPoint> {
    if !is_invertible(a, tol) {
        return Err(Error::SingularMatrix { tol });
    }
    let field = if a.field() == Field::Complex || p.field == Field::Complex {
        Field::Complex
    } else {
        Field::Real
    };
    normalize(field, &a.mat_vec(p.homog())?)
}

/// Affine chart about the `j`-th coordinate: `(homog_k / homog_j)` for k ≠ j,
/// in index order. `j` is zero-based.
pub fn chart_coords(p: &ProjPoint, j: usize, tol: f64) -> Result<Vec<Complex64>> {
    if j >= p.dim() {
        return Err(Error::ChartIndexOutOfRange(j, p.dim()));
    }
    let pj = p.homog[j];
    if pj.norm() <= tol {
        return Err(Error::OutsideChart { chart: j, modulus: pj.norm() });
    }
    Ok(p
        .homog
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != j)
        .map(|(_, z)| z / pj)
        .collect())
}

/// Inverse chart embedding: coordinates `c` about chart `j` back to the point
/// with `homog_j = 1`.
pub fn chart_embed(field: Field, coords: &[Complex64], j: usize) -> Result<ProjPoint> {
    let n = coords.len() + 1;
    if j >= n {
        return Err(Error::ChartIndexOutOfRange(j, n));
    }
    let mut v = Vec::with_capacity(n);
    v.extend_from_slice(&coords[..j]);
    v.push(Complex64::ONE);
    v.extend_from_slice(&coords[j..]);
    normalize(field, &v)
}

/// Chart of largest modulus at `p`.
pub fn best_chart(p: &ProjPoint) -> usize {
    p.homog
        .iter()
        .enumerate()
        .fold((0, -1.0), |(bi, bm), (i, z)| {
            if z.norm() > bm {
                (i, z.norm())
            } else {
                (bi, bm)
            }
        })
        .0
}

/// Angle `arccos(|P_E v|)` from `p` to the projectivized span of `basis`.
pub fn dist_to_projectivized_subspace(p: &ProjPoint, basis: &[Vec<Complex64>]) -> Result<f64> {
    let on = linalg::orthonormalize(basis, 1e-12);
    if on.is_empty() {
        return Err(Error::ZeroVector);
    }
    let mut w = p.homog().to_vec();
    let mut proj_sq = 0.0;
    for u in &on {
        let c = linalg::dot(u, p.homog());
        proj_sq += c.norm_sqr();
        for (wi, ui) in w.iter_mut().zip(u) {
            *wi -= c * ui;
        }
    }
    Ok(libm::atan2(linalg::norm(&w), libm::sqrt(proj_sq)))
}
