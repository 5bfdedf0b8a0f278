//! Dense small-dimension (2 ≤ n ≤ 8) scalar/vector/matrix arithmetic over R
//! and C, with geometric eigendecomposition.
//!
//! Everything runs internally over `Complex64`; a [`Field`] tag decides which
//! eigenvalues are admissible and keeps real data real. Eigenvalues come from
//! a shifted QR iteration on the Hessenberg form; eigenspaces are geometric
//! kernels `ker(λI − A)` extracted by full-pivot elimination, because the
//! fixed-set formula on the exceptional locus wants kernels, not Jordan
//! structure.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

use crate::{Error, Result, DEFAULT_TOL};

/// Scalar field: R or C.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    Real,
    Complex,
}

pub const MIN_DIM: usize = 2;
pub const MAX_DIM: usize = 8;

// ---------------------------------------------------------------------------
// vector helpers shared by the whole crate

/// Hermitian inner product ⟨a, b⟩ = Σ conj(a_i) b_i.
pub fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm_sq(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum()
}

pub fn norm(v: &[Complex64]) -> f64 {
    libm::sqrt(norm_sq(v))
}

pub fn scale(v: &[Complex64], s: Complex64) -> Vec<Complex64> {
    v.iter().map(|x| x * s).collect()
}

pub fn sub(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn dist(a: &[Complex64], b: &[Complex64]) -> f64 {
    norm(&sub(a, b))
}

pub fn from_real(v: &[f64]) -> Vec<Complex64> {
    v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
}

pub fn max_imag(v: &[Complex64]) -> f64 {
    v.iter().fold(0.0, |m, x| f64::max(m, libm::fabs(x.im)))
}

// ---------------------------------------------------------------------------

/// Square matrix over R or C, row-major, 2 ≤ n ≤ 8.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    field: Field,
    n: usize,
    data: Vec<Complex64>,
}

impl Matrix {
    pub fn new(field: Field, n: usize, data: Vec<Complex64>) -> Result<Self> {
        if !(MIN_DIM..=MAX_DIM).contains(&n) {
            return Err(Error::DimensionOutOfRange(n));
        }
        if data.len() != n * n {
            return Err(Error::NotSquare {
                rows: data.len() / n.max(1),
                cols: n,
            });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFiniteEntry);
        }
        if field == Field::Real && data.iter().any(|z| z.im != 0.0) {
            return Err(Error::FieldMismatch);
        }
        Ok(Matrix { field, n, data })
    }

    /// Real matrix from row-major real entries.
    pub fn from_rows(rows: &[&[f64]]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            if r.len() != n {
                return Err(Error::NotSquare { rows: n, cols: r.len() });
            }
            data.extend(r.iter().map(|&x| Complex64::new(x, 0.0)));
        }
        Matrix::new(Field::Real, n, data)
    }

    pub fn identity(field: Field, n: usize) -> Result<Self> {
        let mut data = vec![Complex64::ZERO; n * n];
        for i in 0..n {
            data[i * n + i] = Complex64::ONE;
        }
        Matrix::new(field, n, data)
    }

    pub fn diagonal(field: Field, entries: &[Complex64]) -> Result<Self> {
        let n = entries.len();
        let mut data = vec![Complex64::ZERO; n * n];
        for (i, &e) in entries.iter().enumerate() {
            data[i * n + i] = e;
        }
        Matrix::new(field, n, data)
    }

    /// 2x2 real rotation by `theta`.
    pub fn rotation(theta: f64) -> Self {
        let (s, c) = (libm::sin(theta), libm::cos(theta));
        Matrix::from_rows(&[&[c, -s], &[s, c]]).expect("2x2 is in range")
    }

    /// 2x2 real `lambda * rotation(theta)`.
    pub fn rotation_scaling(lambda: f64, theta: f64) -> Self {
        Matrix::rotation(theta).scaled(Complex64::new(lambda, 0.0))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        Matrix {
            field: if s.im != 0.0 { Field::Complex } else { self.field },
            n: self.n,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn mat_vec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch(self.n, v.len()));
        }
        let mut out = vec![Complex64::ZERO; self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                out[i] += self.get(i, j) * v[j];
            }
        }
        Ok(out)
    }

    pub fn mat_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        let n = self.n;
        let mut data = vec![Complex64::ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == Complex64::ZERO {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a * other.get(k, j);
                }
            }
        }
        let field = if self.field == Field::Real && other.field == Field::Real {
            Field::Real
        } else {
            Field::Complex
        };
        Matrix::new(field, n, data)
    }

    pub fn conj_transpose(&self) -> Matrix {
        let n = self.n;
        let mut data = vec![Complex64::ZERO; n * n];
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.get(i, j).conj();
            }
        }
        Matrix { field: self.field, n, data }
    }

    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|z| z.norm_sqr()).sum())
    }

    /// Block-diagonal assembly; dimensions of the blocks must sum into range.
    pub fn block_diagonal(field: Field, blocks: &[Matrix2OrBlock]) -> Result<Matrix> {
        let n: usize = blocks.iter().map(|b| b.dim()).sum();
        let mut data = vec![Complex64::ZERO; n * n];
        let mut off = 0;
        for b in blocks {
            match b {
                Matrix2OrBlock::Scalar(s) => {
                    data[off * n + off] = *s;
                    off += 1;
                }
                Matrix2OrBlock::ScaledIdentity { lambda, m } => {
                    for i in 0..*m {
                        data[(off + i) * n + off + i] = *lambda;
                    }
                    off += m;
                }
                Matrix2OrBlock::RotationScaling { lambda, theta } => {
                    let (s, c) = (libm::sin(*theta), libm::cos(*theta));
                    data[off * n + off] = Complex64::new(lambda * c, 0.0);
                    data[off * n + off + 1] = Complex64::new(-lambda * s, 0.0);
                    data[(off + 1) * n + off] = Complex64::new(lambda * s, 0.0);
                    data[(off + 1) * n + off + 1] = Complex64::new(lambda * c, 0.0);
                    off += 2;
                }
            }
        }
        Matrix::new(field, n, data)
    }
}

/// Building blocks for synthesized block-diagonal matrices.
#[derive(Debug, Clone)]
pub enum Matrix2OrBlock {
    Scalar(Complex64),
    ScaledIdentity { lambda: Complex64, m: usize },
    RotationScaling { lambda: f64, theta: f64 },
}

impl Matrix2OrBlock {
    fn dim(&self) -> usize {
        match self {
            Matrix2OrBlock::Scalar(_) => 1,
            Matrix2OrBlock::ScaledIdentity { m, .. } => *m,
            Matrix2OrBlock::RotationScaling { .. } => 2,
        }
    }
}

// ---------------------------------------------------------------------------
// eigenvalues: Hessenberg reduction + shifted QR iteration over C

fn hessenberg(a: &mut [Vec<Complex64>]) {
    let n = a.len();
    for k in 0..n.saturating_sub(2) {
        // Householder vector for column k, rows k+1..n
        let mut alpha_sq = 0.0;
        for i in k + 1..n {
            alpha_sq += a[i][k].norm_sqr();
        }
        let alpha = libm::sqrt(alpha_sq);
        if alpha <= f64::EPSILON * 16.0 {
            continue;
        }
        let x0 = a[k + 1][k];
        let phase = if x0.norm() > 0.0 { x0 / x0.norm() } else { Complex64::ONE };
        let beta = -phase * alpha;
        let mut v = vec![Complex64::ZERO; n];
        v[k + 1] = x0 - beta;
        for i in k + 2..n {
            v[i] = a[i][k];
        }
        let vn = libm::sqrt(norm_sq(&v));
        if vn <= f64::EPSILON * 16.0 * alpha {
            continue;
        }
        for z in v.iter_mut() {
            *z /= vn;
        }
        // A <- (I - 2vv*) A
        for j in 0..n {
            let mut s = Complex64::ZERO;
            for i in k + 1..n {
                s += v[i].conj() * a[i][j];
            }
            s *= 2.0;
            for i in k + 1..n {
                let w = v[i] * s;
                a[i][j] -= w;
            }
        }
        // A <- A (I - 2vv*)
        for row in a.iter_mut() {
            let mut s = Complex64::ZERO;
            for i in k + 1..n {
                s += row[i] * v[i];
            }
            s *= 2.0;
            for i in k + 1..n {
                let w = s * v[i].conj();
                row[i] -= w;
            }
        }
    }
}

fn wilkinson_shift(h: &[Vec<Complex64>], hi: usize) -> Complex64 {
    let a = h[hi - 1][hi - 1];
    let b = h[hi - 1][hi];
    let c = h[hi][hi - 1];
    let d = h[hi][hi];
    let tr = a + d;
    let det = a * d - b * c;
    let disc = (tr * tr - 4.0 * det).sqrt();
    let l1 = (tr + disc) * 0.5;
    let l2 = (tr - disc) * 0.5;
    if (l1 - d).norm() < (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Eigenvalues of a square matrix via complex shifted QR on the Hessenberg
/// form. Deterministic; adequate for n ≤ 8.
pub fn eigenvalues(a: &Matrix) -> Vec<Complex64> {
    let n = a.dim();
    let mut h: Vec<Vec<Complex64>> = (0..n)
        .map(|i| (0..n).map(|j| a.get(i, j)).collect())
        .collect();
    hessenberg(&mut h);
    let scale = a.frobenius_norm().max(1.0);
    let eps = f64::EPSILON * scale;
    let mut eigs = Vec::with_capacity(n);
    let mut hi = n - 1;
    let mut iters_on_block = 0usize;
    loop {
        // deflate negligible subdiagonals
        for i in 1..=hi {
            let small = f64::EPSILON * (h[i - 1][i - 1].norm() + h[i][i].norm()).max(scale * 1e-3);
            if h[i][i - 1].norm() <= small {
                h[i][i - 1] = Complex64::ZERO;
            }
        }
        if hi == 0 || h[hi][hi - 1] == Complex64::ZERO {
            eigs.push(h[hi][hi]);
            if hi == 0 {
                break;
            }
            hi -= 1;
            iters_on_block = 0;
            continue;
        }
        // active block [lo..=hi]
        let mut lo = hi;
        while lo > 0 && h[lo][lo - 1] != Complex64::ZERO {
            lo -= 1;
        }
        iters_on_block += 1;
        let shift = if iters_on_block % 24 == 0 {
            // exceptional shift to break symmetry-induced stagnation
            h[hi][hi] + Complex64::new(h[hi][hi - 1].norm(), eps)
        } else {
            wilkinson_shift(&h, hi)
        };
        if iters_on_block > 300 {
            // give up on further refinement of this block
            for i in lo..=hi {
                eigs.push(h[i][i]);
            }
            if lo == 0 {
                break;
            }
            hi = lo - 1;
            iters_on_block = 0;
            continue;
        }
        // explicit QR step on the active block via Givens rotations
        for i in lo..=hi {
            h[i][i] -= shift;
        }
        let mut rots: Vec<(Complex64, Complex64)> = Vec::with_capacity(hi - lo);
        for i in lo..hi {
            let x = h[i][i];
            let y = h[i + 1][i];
            let r = libm::sqrt(x.norm_sqr() + y.norm_sqr());
            let (c, s) = if r == 0.0 {
                (Complex64::ONE, Complex64::ZERO)
            } else {
                (x.conj() / r, y.conj() / r)
            };
            for j in i..=hi {
                let hij = h[i][j];
                let h1j = h[i + 1][j];
                h[i][j] = c * hij + s * h1j;
                h[i + 1][j] = -s.conj() * hij + c.conj() * h1j;
            }
            rots.push((c, s));
        }
        for (i, (c, s)) in (lo..hi).zip(rots) {
            for row in h.iter_mut().take((i + 2).min(hi + 1)).skip(lo) {
                let a0 = row[i];
                let a1 = row[i + 1];
                row[i] = a0 * c.conj() + a1 * s.conj();
                row[i + 1] = -a0 * s + a1 * c;
            }
        }
        for i in lo..=hi {
            h[i][i] += shift;
        }
    }
    eigs
}

// ---------------------------------------------------------------------------
// kernel extraction and rank

/// Basis of ker(M) by full-pivot Gaussian elimination; pivots below
/// `threshold` (absolute) count as zero. Basis is orthonormalized.
pub fn kernel(m: &[Vec<Complex64>], threshold: f64) -> Vec<Vec<Complex64>> {
    let n = m.len();
    let mut a: Vec<Vec<Complex64>> = m.to_vec();
    let mut col_of = (0..n).collect::<Vec<_>>(); // permuted column -> original
    let mut rank = 0usize;
    for step in 0..n {
        // locate largest remaining entry
        let mut best = (step, step, 0.0f64);
        for i in step..n {
            for j in step..n {
                let v = a[i][j].norm();
                if v > best.2 {
                    best = (i, j, v);
                }
            }
        }
        if best.2 <= threshold {
            break;
        }
        a.swap(step, best.0);
        for row in a.iter_mut() {
            row.swap(step, best.1);
        }
        col_of.swap(step, best.1);
        let piv = a[step][step];
        for i in step + 1..n {
            let f = a[i][step] / piv;
            for j in step..n {
                let w = f * a[step][j];
                a[i][j] -= w;
            }
            a[i][step] = Complex64::ZERO;
        }
        rank += 1;
    }
    // back-substitute: one kernel vector per free (permuted) column
    let mut basis = Vec::with_capacity(n - rank);
    for free in rank..n {
        let mut y = vec![Complex64::ZERO; n]; // permuted coordinates
        y[free] = Complex64::ONE;
        for i in (0..rank).rev() {
            let mut s = Complex64::ZERO;
            for j in i + 1..n {
                s += a[i][j] * y[j];
            }
            y[i] = -s / a[i][i];
        }
        let mut v = vec![Complex64::ZERO; n];
        for (perm, &orig) in col_of.iter().enumerate() {
            v[orig] = y[perm];
        }
        basis.push(v);
    }
    orthonormalize(&basis, 1e-12)
}

/// Modified Gram–Schmidt; drops vectors whose residual falls below `drop_tol`
/// times their original norm.
pub fn orthonormalize(vectors: &[Vec<Complex64>], drop_tol: f64) -> Vec<Vec<Complex64>> {
    let mut out: Vec<Vec<Complex64>> = Vec::with_capacity(vectors.len());
    for v in vectors {
        let orig = norm(v);
        if orig == 0.0 {
            continue;
        }
        let mut w = v.clone();
        for _ in 0..2 {
            for u in &out {
                let c = dot(u, &w);
                for (wi, ui) in w.iter_mut().zip(u) {
                    *wi -= c * ui;
                }
            }
        }
        let wn = norm(&w);
        if wn > drop_tol * orig {
            out.push(scale(&w, Complex64::new(1.0 / wn, 0.0)));
        }
    }
    out
}

/// Numerical rank of a set of vectors (as rows), threshold relative to the
/// largest row norm.
pub fn rank_of(vectors: &[Vec<Complex64>], rel_tol: f64) -> usize {
    orthonormalize(vectors, rel_tol).len()
}

// ---------------------------------------------------------------------------
// geometric eigendecomposition

/// One geometric eigenspace: eigenvalue, kernel basis of `λI − A`.
#[derive(Debug, Clone)]
pub struct EigenComponent {
    pub lambda: Complex64,
    pub basis: Vec<Vec<Complex64>>,
}

impl EigenComponent {
    pub fn geometric_multiplicity(&self) -> usize {
        self.basis.len()
    }
}

fn lambda_minus_a(a: &Matrix, lambda: Complex64, realify: bool) -> Vec<Vec<Complex64>> {
    let n = a.dim();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut v = -a.get(i, j);
                    if i == j {
                        v += lambda;
                    }
                    if realify {
                        v.im = 0.0;
                    }
                    v
                })
                .collect()
        })
        .collect()
}

/// Eigenvalue clusters with their geometric eigenspaces.
///
/// Over `Field::Real` only clusters with negligible imaginary part are
/// returned, so the list may be empty (e.g. a rotation); over `Field::Complex`
/// it is nonempty for any matrix in the supported range.
pub fn eigen_decompose(a: &Matrix, tol: f64) -> Result<Vec<EigenComponent>> {
    let n = a.dim();
    let scale_a = a.frobenius_norm().max(1.0);
    let eigs = eigenvalues(a);
    // Cluster within relative tolerance. The floor absorbs the O(sqrt(eps))
    // eigenvalue perturbation of defective clusters.
    let cluster_tol = |x: Complex64, y: Complex64| {
        f64::max(tol, 2e-7 * scale_a) * f64::max(1.0, f64::max(x.norm(), y.norm()))
    };
    let mut cluster_id: Vec<usize> = (0..n).collect();
    fn find(ids: &mut Vec<usize>, i: usize) -> usize {
        let mut r = i;
        while ids[r] != r {
            r = ids[r];
        }
        ids[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if (eigs[i] - eigs[j]).norm() <= cluster_tol(eigs[i], eigs[j]) {
                let (ri, rj) = (find(&mut cluster_id, i), find(&mut cluster_id, j));
                cluster_id[ri] = rj;
            }
        }
    }
    let mut reps: Vec<(Complex64, usize)> = Vec::new(); // (sum, count) keyed by root
    let mut root_index: Vec<Option<usize>> = vec![None; n];
    for i in 0..n {
        let r = find(&mut cluster_id, i);
        match root_index[r] {
            Some(k) => {
                reps[k].0 += eigs[i];
                reps[k].1 += 1;
            }
            None => {
                root_index[r] = Some(reps.len());
                reps.push((eigs[i], 1));
            }
        }
    }

    let kernel_threshold = f64::max(tol, 64.0 * f64::EPSILON) * scale_a;
    let mut components: Vec<EigenComponent> = Vec::new();
    for (sum, count) in reps {
        let mean = sum / count as f64;
        let lambda = match a.field() {
            Field::Real => {
                if libm::fabs(mean.im) > f64::max(tol, 2e-7 * scale_a) {
                    continue; // complex pair: no real eigenvector
                }
                Complex64::new(mean.re, 0.0)
            }
            Field::Complex => mean,
        };
        let realify = a.field() == Field::Real;
        let mut basis = kernel(&lambda_minus_a(a, lambda, realify), kernel_threshold);
        if basis.is_empty() {
            // inexact repeated eigenvalue: retry with a looser threshold
            basis = kernel(
                &lambda_minus_a(a, lambda, realify),
                libm::sqrt(f64::EPSILON) * scale_a * 32.0,
            );
        }
        if basis.is_empty() {
            continue;
        }
        // Rayleigh refinement of the cluster eigenvalue
        let mut rq = Complex64::ZERO;
        for v in &basis {
            rq += dot(v, &a.mat_vec(v)?);
        }
        rq /= basis.len() as f64;
        let lambda = if realify { Complex64::new(rq.re, 0.0) } else { rq };
        components.push(EigenComponent { lambda, basis });
    }

    // Merge components whose eigenspaces overlap (an over-split cluster).
    let mut merged: Vec<EigenComponent> = Vec::new();
    'outer: for comp in components {
        for existing in merged.iter_mut() {
            if (existing.lambda - comp.lambda).norm()
                <= 1e-4 * f64::max(1.0, existing.lambda.norm())
            {
                let mut stacked = existing.basis.clone();
                stacked.extend(comp.basis.iter().cloned());
                if rank_of(&stacked, 1e-6) < stacked.len() {
                    existing.basis = orthonormalize(&stacked, 1e-6);
                    continue 'outer;
                }
            }
        }
        merged.push(comp);
    }
    merged.sort_by(|a, b| {
        (b.lambda.norm(), b.lambda.re, b.lambda.im)
            .partial_cmp(&(a.lambda.norm(), a.lambda.re, a.lambda.im))
            .unwrap_or(core::cmp::Ordering::Equal)
    });
    Ok(merged)
}

/// Determinant by elimination (exact enough for the supported range).
pub fn determinant(a: &Matrix) -> Complex64 {
    let n = a.dim();
    let mut m: Vec<Vec<Complex64>> = (0..n)
        .map(|i| (0..n).map(|j| a.get(i, j)).collect())
        .collect();
    let mut det = Complex64::ONE;
    for k in 0..n {
        let (mut pi, mut pv) = (k, m[k][k].norm());
        for i in k + 1..n {
            if m[i][k].norm() > pv {
                pi = i;
                pv = m[i][k].norm();
            }
        }
        if pv == 0.0 {
            return Complex64::ZERO;
        }
        if pi != k {
            m.swap(pi, k);
            det = -det;
        }
        det *= m[k][k];
        for i in k + 1..n {
            let f = m[i][k] / m[k][k];
            for j in k..n {
                let w = f * m[k][j];
                m[i][j] -= w;
            }
        }
    }
    det
}

/// Smallest singular value via the Hermitian eigenvalues of A*A.
pub fn smallest_singular_value(a: &Matrix) -> f64 {
    let ata = a.conj_transpose().mat_mul(a).expect("same dim");
    let eigs = eigenvalues(&ata);
    let min = eigs.iter().map(|l| l.re.max(0.0)).fold(f64::INFINITY, f64::min);
    libm::sqrt(min.max(0.0))
}

/// `true` iff A is invertible above `tol`: |det| for n ≤ 3, smallest singular
/// value otherwise.
pub fn is_invertible(a: &Matrix, tol: f64) -> bool {
    if a.dim() <= 3 {
        determinant(a).norm() > tol
    } else {
        smallest_singular_value(a) > tol
    }
}

/// Residual |Av − λv| of a claimed eigenpair.
pub fn eigen_residual(a: &Matrix, lambda: Complex64, v: &[Complex64]) -> Result<f64> {
    let av = a.mat_vec(v)?;
    Ok(dist(&av, &scale(v, lambda)))
}

pub fn describe_component(field: Field, m: usize) -> String {
    match field {
        Field::Real => format!("P(E_lambda) = RP^{}", m - 1),
        Field::Complex => format!("P(E_lambda) = CP^{}", m - 1),
    }
}

pub fn default_tol() -> f64 {
    DEFAULT_TOL
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn diagonal_eigen() {
        let a = Matrix::from_rows(&[&[2.0, 0.0], &[0.0, 3.0]]).unwrap();
        let comps = eigen_decompose(&a, DEFAULT_TOL).unwrap();
        assert_eq!(comps.len(), 2);
        // sorted by descending modulus: 3 first
        assert!((comps[0].lambda - c(3.0, 0.0)).norm() < 1e-12);
        assert!((comps[1].lambda - c(2.0, 0.0)).norm() < 1e-12);
        assert_eq!(comps[0].geometric_multiplicity(), 1);
        // eigenvector of 3 is e2, of 2 is e1
        assert!(comps[0].basis[0][1].norm() > 0.999);
        assert!(comps[1].basis[0][0].norm() > 0.999);
    }

    #[test]
    fn jordan_block_geometric_multiplicity_one() {
        // oracle: row-reducing 2I - A = [[0,-1],[0,0]] has rank 1, so the
        // kernel is one-dimensional, spanned by e1
        let a = Matrix::from_rows(&[&[2.0, 1.0], &[0.0, 2.0]]).unwrap();
        let comps = eigen_decompose(&a, DEFAULT_TOL).unwrap();
        assert_eq!(comps.len(), 1);
        assert!((comps[0].lambda.re - 2.0).abs() < 1e-7);
        assert_eq!(comps[0].geometric_multiplicity(), 1);
        assert!(comps[0].basis[0][0].norm() > 0.999);
    }

    #[test]
    fn quarter_rotation_has_no_real_eigenvalues() {
        let a = Matrix::rotation(core::f64::consts::FRAC_PI_2);
        let comps = eigen_decompose(&a, DEFAULT_TOL).unwrap();
        assert!(comps.is_empty());
    }

    #[test]
    fn quarter_rotation_over_c_has_two() {
        let a = Matrix::rotation(core::f64::consts::FRAC_PI_2);
        let ac = Matrix::new(Field::Complex, 2, a.entries().to_vec()).unwrap();
        let comps = eigen_decompose(&ac, DEFAULT_TOL).unwrap();
        assert_eq!(comps.len(), 2);
        for comp in &comps {
            assert!((comp.lambda.norm() - 1.0).abs() < 1e-10);
            assert!(libm::fabs(comp.lambda.im).abs() > 0.9);
        }
    }

    #[test]
    fn scaled_identity_full_eigenspace() {
        let a = Matrix::identity(Field::Real, 3).unwrap().scaled(c(2.0, 0.0));
        let comps = eigen_decompose(&a, DEFAULT_TOL).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].geometric_multiplicity(), 3);
    }

    #[test]
    fn invertibility() {
        assert!(is_invertible(&Matrix::identity(Field::Real, 2).unwrap(), DEFAULT_TOL));
        let z = Matrix::from_rows(&[&[0.0, 0.0], &[0.0, 0.0]]).unwrap();
        assert!(!is_invertible(&z, DEFAULT_TOL));
        let r1 = Matrix::from_rows(&[&[1.0, 1.0], &[1.0, 1.0]]).unwrap();
        assert!(!is_invertible(&r1, DEFAULT_TOL));
        let big = Matrix::identity(Field::Real, 5).unwrap();
        assert!(is_invertible(&big, DEFAULT_TOL));
    }

    #[test]
    fn residual_bound_on_random_like_matrix() {
        let a = Matrix::from_rows(&[&[1.0, 2.0, 0.5], &[0.2, -1.0, 1.0], &[0.0, 0.3, 4.0]])
            .unwrap();
        let comps = eigen_decompose(&a, DEFAULT_TOL).unwrap();
        assert!(!comps.is_empty());
        for comp in &comps {
            for v in &comp.basis {
                let r = eigen_residual(&a, comp.lambda, v).unwrap();
                assert!(r <= DEFAULT_TOL * (1.0 + comp.lambda.norm()) * norm(v), "residual {r}");
            }
        }
    }

    #[test]
    fn dimension_guard() {
        assert!(matches!(
            Matrix::new(Field::Real, 1, vec![Complex64::ONE]),
            Err(Error::DimensionOutOfRange(1))
        ));
        assert!(matches!(
            Matrix::new(Field::Real, 9, vec![Complex64::ONE; 81]),
            Err(Error::DimensionOutOfRange(9))
        ));
    }
}
