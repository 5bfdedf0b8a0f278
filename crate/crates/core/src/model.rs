//! The classical incidence model `X ⊂ F^n × P(F^n)`, the blowdown `q`, point
//! lifting, and the tautological line-bundle projection.
//!
//! A point of `X` is a pair `(x, [y])` with `x` on the line `[y]`; the
//! incidence condition is the vanishing of all 2×2 minors `x_j y_k − x_k y_j`.
//! The exceptional locus `Σ` is the fiber `x = 0`.

use alloc::vec::Vec;
use num_complex::Complex64;

use crate::linalg::{self, Field};
use crate::projective::{self, ProjPoint};
use crate::{Error, Result, SIGMA_CUTOFF};

#[derive(Debug, Clone, PartialEq)]
pub struct BlowupPoint {
    x: Vec<Complex64>,
    y: ProjPoint,
}

/// Max over j < k of `|x_j y_k − x_k y_j|` on the normalized representative.
pub fn incidence_residual(x: &[Complex64], y: &ProjPoint) -> Result<f64> {
    if x.len() != y.dim() {
        return Err(Error::DimensionMismatch(x.len(), y.dim()));
    }
    let u = y.homog();
    let mut worst = 0.0f64;
    for j in 0..x.len() {
        for k in j + 1..x.len() {
            let minor = (x[j] * u[k] - x[k] * u[j]).norm();
            if minor > worst {
                worst = minor;
            }
        }
    }
    Ok(worst)
}

impl BlowupPoint {
    /// Pair `(x, [y])`, accepted when the incidence residual is at most
    /// `tol · (1 + |x|)` (minors scale linearly with `|x|`).
    pub fn new(x: Vec<Complex64>, y: ProjPoint, tol: f64) -> Result<Self> {
        let residual = incidence_residual(&x, &y)?;
        let allowed = tol * (1.0 + linalg::norm(&x));
        if residual > allowed {
            return Err(Error::IncidenceViolated { residual, allowed });
        }
        if y.field() == Field::Real && x.iter().any(|z| z.im != 0.0) {
            return Err(Error::FieldMismatch);
        }
        Ok(BlowupPoint { x, y })
    }

    pub fn field(&self) -> Field {
        self.y.field()
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    /// Base coordinate (the blowdown image).
    pub fn base(&self) -> &[Complex64] {
        &self.x
    }

    /// Fiber coordinate.
    pub fn fiber(&self) -> &ProjPoint {
        &self.y
    }

    pub fn on_sigma(&self) -> bool {
        linalg::norm(&self.x) == 0.0
    }

    /// A point of `Σ` over the origin with fiber `y`.
    pub fn sigma_point(y: ProjPoint) -> Self {
        let x = alloc::vec![Complex64::ZERO; y.dim()];
        BlowupPoint { x, y }
    }
}

/// The blowdown `q(x, [y]) = x`; restricted to `X ∖ Σ` it is injective.
pub fn blowdown(p: &BlowupPoint) -> &[Complex64] {
    p.base()
}

/// Unique lift `(x, [x])` of a point away from the origin. Below the cutoff
/// the lift is not unique and is refused; construct `Σ`-points explicitly.
pub fn lift_point(field: Field, x: &[Complex64], tol: f64) -> Result<BlowupPoint> {
    let nx = linalg::norm(x);
    if nx <= tol.max(SIGMA_CUTOFF) {
        return Err(Error::LiftAtOrigin { norm: nx });
    }
    let y = projective::normalize(field, x)?;
    Ok(BlowupPoint { x: x.to_vec(), y })
}

pub fn lift_point_real(x: &[f64], tol: f64) -> Result<BlowupPoint> {
    lift_point(Field::Real, &linalg::from_real(x), tol)
}

/// The line-bundle projection `(x, [y]) ↦ [y]`; constant along fiber lines
/// and the identity on the zero section `Σ`.
pub fn bundle_projection(p: &BlowupPoint) -> &ProjPoint {
    p.fiber()
}

/// The unique `μ` with `x = μ · homog(y)` for the normalized representative;
/// zero exactly on `Σ`.
pub fn mu_of(p: &BlowupPoint) -> Complex64 {
    linalg::dot(p.fiber().homog(), p.base())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projective::normalize_real;
    use crate::DEFAULT_TOL;

    fn rp(x: &[f64], y: &[f64]) -> BlowupPoint {
        BlowupPoint::new(linalg::from_real(x), normalize_real(y).unwrap(), DEFAULT_TOL).unwrap()
    }

    #[test]
    fn incidence_examples() {
        let y = normalize_real(&[1.0, 2.0]).unwrap();
        assert!(incidence_residual(&linalg::from_real(&[1.0, 2.0]), &y).unwrap() < 1e-15);
        // every fiber point is incident over the origin
        let any = normalize_real(&[0.3, -0.8]).unwrap();
        assert!(incidence_residual(&linalg::from_real(&[0.0, 0.0]), &any).unwrap() == 0.0);
        // oracle: |1*1 - 2*2| on the unit representative of (2,1)
        let y21 = normalize_real(&[2.0, 1.0]).unwrap();
        let r = incidence_residual(&linalg::from_real(&[1.0, 2.0]), &y21).unwrap();
        assert!((r - 3.0 / libm::sqrt(5.0)).abs() < 1e-12);
    }

    #[test]
    fn blowdown_examples() {
        let p = rp(&[3.0, 4.0], &[3.0, 4.0]);
        assert_eq!(blowdown(&p), p.base());
        // distinct fiber points over the origin share the image
        let s1 = BlowupPoint::sigma_point(normalize_real(&[1.0, 0.0]).unwrap());
        let s2 = BlowupPoint::sigma_point(normalize_real(&[0.0, 1.0]).unwrap());
        assert_eq!(linalg::norm(blowdown(&s1)), 0.0);
        assert_eq!(linalg::norm(blowdown(&s2)), 0.0);
        assert_ne!(s1, s2);
    }

    #[test]
    fn incidence_rejects_off_line_pairs() {
        let y = normalize_real(&[2.0, 1.0]).unwrap();
        assert!(matches!(
            BlowupPoint::new(linalg::from_real(&[1.0, 2.0]), y, DEFAULT_TOL),
            Err(Error::IncidenceViolated { .. })
        ));
    }

    #[test]
    fn lift_examples() {
        let p = lift_point_real(&[2.0, 0.0], DEFAULT_TOL).unwrap();
        assert!(p.fiber().approx_eq(&normalize_real(&[1.0, 0.0]).unwrap(), 1e-15));
        let p = lift_point_real(&[1.0, 1.0], DEFAULT_TOL).unwrap();
        assert!(p.fiber().approx_eq(&normalize_real(&[1.0, 1.0]).unwrap(), 1e-15));
        assert!(matches!(
            lift_point_real(&[0.0, 0.0], DEFAULT_TOL),
            Err(Error::LiftAtOrigin { .. })
        ));
    }

    #[test]
    fn bundle_projection_examples() {
        let p = rp(&[2.0, 4.0], &[1.0, 2.0]);
        assert!(bundle_projection(&p).approx_eq(&normalize_real(&[1.0, 2.0]).unwrap(), 1e-15));
        // zero section
        let s = BlowupPoint::sigma_point(normalize_real(&[0.0, 1.0]).unwrap());
        assert!(bundle_projection(&s).approx_eq(&normalize_real(&[0.0, 1.0]).unwrap(), 1e-15));
        // mu negative: fiber carries no sign
        let p = rp(&[-1.0, -2.0], &[1.0, 2.0]);
        assert!(bundle_projection(&p).approx_eq(&normalize_real(&[1.0, 2.0]).unwrap(), 1e-15));
    }

    #[test]
    fn mu_examples() {
        // oracle: mu = <unit rep of y, x>
        let p = rp(&[2.0, 4.0], &[1.0, 2.0]);
        let mu = mu_of(&p);
        assert!((mu.re - 2.0 * libm::sqrt(5.0)).abs() < 1e-12 && mu.im == 0.0);

        let s = BlowupPoint::sigma_point(normalize_real(&[1.0, 0.0]).unwrap());
        assert_eq!(mu_of(&s), Complex64::ZERO);

        // sign carried by mu, not by y
        let p = rp(&[-1.0, 0.0], &[1.0, 0.0]);
        assert!((mu_of(&p).re + 1.0).abs() < 1e-15);
    }
}
