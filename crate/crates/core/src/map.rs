//! Analytically specified self-maps `h` of `F^n` fixing the origin, and their
//! lifts `ĥ` through the blowdown.
//!
//! The lift acts by `(x, [x]) ↦ (h(x), [h(x)])` away from `Σ` and by the
//! projectivized derivative `[y] ↦ [Dh|_0 y]` on `Σ`. Map families form a
//! closed catalog with analytic derivatives at the origin, so functoriality
//! checks carry no differentiation error.

use alloc::string::String;
use alloc::vec::Vec;
use num_complex::Complex64;

use crate::linalg::{self, is_invertible, Field, Matrix};
use crate::model::{self, BlowupPoint};
use crate::projective::{self, ProjPoint};
use crate::rng;
use crate::{Error, Result, DEFAULT_TOL, SIGMA_CUTOFF};

/// One term of a polynomial coordinate: `coeff · Π x_i^{exponents[i]}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Monomial {
    pub exponents: Vec<u32>,
    pub coeff: Complex64,
}

/// The built-in family catalog. Every member fixes the origin and has an
/// invertible derivative there (checked by [`MapSpec::validate`]).
#[derive(Debug, Clone, PartialEq)]
pub enum MapSpec {
    Linear(Matrix),
    /// `h(x, y) = (x + x|x|, y)` on R²: the C¹-but-not-C² model map.
    PaperExampleC1,
    /// `h(x, y) = (x + x|x|^k, y)` on R²: C^k but not C^{k+1}; `k = 1` is
    /// the same map as `PaperExampleC1`.
    KinkPower { order: u32 },
    /// Per-coordinate multivariate polynomials with zero constant term.
    Polynomial {
        field: Field,
        n: usize,
        coords: Vec<Vec<Monomial>>,
    },
    /// `λ · rotation(θ)` on R².
    RotationScaling { lambda: f64, theta: f64 },
    /// `Composite([f, g, …])` is `f ∘ g ∘ …` (outermost first).
    Composite(Vec<MapSpec>),
}

impl MapSpec {
    pub fn field(&self) -> Field {
        match self {
            MapSpec::Linear(m) => m.field(),
            MapSpec::PaperExampleC1 | MapSpec::KinkPower { .. } => Field::Real,
            MapSpec::Polynomial { field, .. } => *field,
            MapSpec::RotationScaling { .. } => Field::Real,
            MapSpec::Composite(parts) => {
                if parts.iter().any(|p| p.field() == Field::Complex) {
                    Field::Complex
                } else {
                    Field::Real
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        match self {
            MapSpec::Linear(m) => m.dim(),
            MapSpec::PaperExampleC1 | MapSpec::KinkPower { .. } => 2,
            MapSpec::Polynomial { n, .. } => *n,
            MapSpec::RotationScaling { .. } => 2,
            MapSpec::Composite(parts) => parts.first().map_or(0, |p| p.n()),
        }
    }

    /// Claimed smoothness order; `None` means C^∞.
    pub fn smoothness_order(&self) -> Option<u32> {
        match self {
            MapSpec::Linear(_) | MapSpec::Polynomial { .. } | MapSpec::RotationScaling { .. } => {
                None
            }
            MapSpec::PaperExampleC1 => Some(1),
            MapSpec::KinkPower { order } => Some(*order),
            MapSpec::Composite(parts) => {
                parts.iter().filter_map(|p| p.smoothness_order()).min()
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            MapSpec::Linear(_) => {}
            MapSpec::PaperExampleC1 => {}
            MapSpec::KinkPower { order } => {
                if *order < 1 {
                    return Err(Error::InvalidMapSpec(String::from(
                        "kink power order must be at least 1",
                    )));
                }
            }
            MapSpec::Polynomial { n, coords, .. } => {
                if coords.len() != *n {
                    return Err(Error::InvalidMapSpec(String::from(
                        "polynomial must give one coordinate list per dimension",
                    )));
                }
                for terms in coords {
                    for t in terms {
                        if t.exponents.len() != *n {
                            return Err(Error::InvalidMapSpec(String::from(
                                "monomial exponent list length must equal the dimension",
                            )));
                        }
                        if t.exponents.iter().all(|&e| e == 0) && t.coeff != Complex64::ZERO {
                            return Err(Error::InvalidMapSpec(String::from(
                                "nonzero constant term: the map must fix the origin",
                            )));
                        }
                    }
                }
            }
            MapSpec::RotationScaling { lambda, .. } => {
                if *lambda <= 0.0 {
                    return Err(Error::InvalidMapSpec(String::from(
                        "rotation-scaling factor must be positive",
                    )));
                }
            }
            MapSpec::Composite(parts) => {
                if parts.is_empty() {
                    return Err(Error::InvalidMapSpec(String::from("empty composite")));
                }
                let n = parts[0].n();
                for p in parts {
                    p.validate()?;
                    if p.n() != n {
                        return Err(Error::DimensionMismatch(n, p.n()).into());
                    }
                }
            }
        }
        let d0 = self.derivative_at_origin()?;
        if !is_invertible(&d0, DEFAULT_TOL) {
            return Err(Error::SingularMatrix { tol: DEFAULT_TOL });
        }
        Ok(())
    }

    /// Exact analytic derivative at the origin, per family.
    pub fn derivative_at_origin(&self) -> Result<Matrix> {
        match self {
            MapSpec::Linear(m) => Ok(m.clone()),
            // g'(0) = 1 for g(x) = x + x|x|^k, so the derivative is I
            MapSpec::PaperExampleC1 | MapSpec::KinkPower { .. } => {
                Matrix::identity(Field::Real, 2)
            }
            MapSpec::Polynomial { field, n, coords } => {
                let mut data = alloc::vec![Complex64::ZERO; n * n];
                for (i, terms) in coords.iter().enumerate() {
                    for t in terms {
                        if t.exponents.iter().sum::<u32>() == 1 {
                            let j = t.exponents.iter().position(|&e| e == 1).unwrap();
                            data[i * n + j] += t.coeff;
                        }
                    }
                }
                Matrix::new(*field, *n, data)
            }
            MapSpec::RotationScaling { lambda, theta } => {
                Ok(Matrix::rotation_scaling(*lambda, *theta))
            }
            MapSpec::Composite(parts) => {
                let mut acc: Option<Matrix> = None;
                for p in parts {
                    let d = p.derivative_at_origin()?;
                    acc = Some(match acc {
                        None => d,
                        Some(m) => m.mat_mul(&d)?,
                    });
                }
                Ok(acc.unwrap())
            }
        }
    }

    /// `h(x)`; the origin maps to the origin exactly.
    pub fn eval(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        if x.len() != self.n() {
            return Err(Error::DimensionMismatch(self.n(), x.len()));
        }
        match self {
            MapSpec::Linear(m) => m.mat_vec(x),
            MapSpec::PaperExampleC1 => MapSpec::KinkPower { order: 1 }.eval(x),
            MapSpec::KinkPower { order } => {
                let t = x[0].re;
                let mut powed = 1.0;
                for _ in 0..*order {
                    powed *= libm::fabs(t);
                }
                Ok(alloc::vec![Complex64::new(t + t * powed, 0.0), x[1]])
            }
            MapSpec::Polynomial { coords, .. } => {
                let mut out = Vec::with_capacity(coords.len());
                for terms in coords {
                    let mut s = Complex64::ZERO;
                    for t in terms {
                        let mut v = t.coeff;
                        for (xi, &e) in x.iter().zip(&t.exponents) {
                            for _ in 0..e {
                                v *= xi;
                            }
                        }
                        s += v;
                    }
                    out.push(s);
                }
                Ok(out)
            }
            MapSpec::RotationScaling { lambda, theta } => {
                Matrix::rotation_scaling(*lambda, *theta).mat_vec(x)
            }
            MapSpec::Composite(parts) => {
                let mut v = x.to_vec();
                for p in parts.iter().rev() {
                    v = p.eval(&v)?;
                }
                Ok(v)
            }
        }
    }
}

/// The induced map `ĥ` on `X`, evaluable on and off `Σ`.
#[derive(Debug, Clone)]
pub struct LiftedMap {
    spec: MapSpec,
    d0: Matrix,
}

/// Construct the lift; the derivative at the origin must be invertible.
pub fn lift_map(spec: MapSpec) -> Result<LiftedMap> {
    spec.validate()?;
    let d0 = spec.derivative_at_origin()?;
    Ok(LiftedMap { spec, d0 })
}

impl LiftedMap {
    pub fn spec(&self) -> &MapSpec {
        &self.spec
    }

    /// Derivative of the base map at the origin; its projectivization is the
    /// restriction of the lift to `Σ`.
    pub fn derivative(&self) -> &Matrix {
        &self.d0
    }

    pub fn field(&self) -> Field {
        self.spec.field()
    }

    pub fn n(&self) -> usize {
        self.spec.n()
    }

    /// One application of `ĥ`. Exactly on `Σ` the projectivized derivative
    /// acts on the fiber; off `Σ` but within the cutoff of it, the stored
    /// fiber is pushed through the derivative instead of renormalizing a
    /// near-zero `h(x)`.
    pub fn eval(&self, p: &BlowupPoint, tol: f64) -> Result<BlowupPoint> {
        if p.on_sigma() {
            let fiber = projective::projectivize_linear(&self.d0, p.fiber())?;
            return Ok(BlowupPoint::sigma_point(fiber));
        }
        let hx = self.spec.eval(p.base())?;
        let fiber = if linalg::norm(p.base()) <= SIGMA_CUTOFF || linalg::norm(&hx) <= SIGMA_CUTOFF {
            projective::projectivize_linear(&self.d0, p.fiber())?
        } else {
            projective::normalize(self.field(), &hx)?
        };
        BlowupPoint::new(hx, fiber, tol)
    }

    /// Evaluate the `Σ`-restriction only.
    pub fn eval_sigma(&self, y: &ProjPoint) -> Result<ProjPoint> {
        projective::projectivize_linear(&self.d0, y)
    }
}

/// Result of a sampled residual check; `pass` is `max ≤ tol`.
#[derive(Debug, Clone)]
pub struct ResidualReport {
    pub samples: usize,
    pub max_base_residual: f64,
    pub max_fiber_residual: f64,
    pub max_incidence_residual: f64,
    pub tol: f64,
    pub seed: u64,
}

impl ResidualReport {
    pub fn max_residual(&self) -> f64 {
        self.max_base_residual
            .max(self.max_fiber_residual)
            .max(self.max_incidence_residual)
    }

    pub fn pass(&self) -> bool {
        self.max_residual() <= self.tol
    }
}

fn sample_blowup_points(
    field: Field,
    n: usize,
    count: usize,
    seed: u64,
) -> Result<Vec<BlowupPoint>> {
    let mut r = rng::seeded(seed);
    let mut points = Vec::with_capacity(count);
    for i in 0..count {
        if i % 5 == 4 {
            // Σ-point
            let dir = rng::direction(&mut r, field, n);
            points.push(BlowupPoint::sigma_point(projective::normalize(field, &dir)?));
        } else {
            // off Σ at radii spread over several decades
            let dir = rng::direction(&mut r, field, n);
            let radius = libm::pow(10.0, rand::Rng::gen_range(&mut r, -3.0..0.5));
            let x = linalg::scale(&dir, Complex64::new(radius, 0.0));
            points.push(model::lift_point(field, &x, SIGMA_CUTOFF)?);
        }
    }
    Ok(points)
}

/// Sampled verification that `q ∘ ĥ = h ∘ q`, with incidence of every output.
pub fn check_commutation(
    spec: &MapSpec,
    sample_count: usize,
    tol: f64,
    seed: u64,
) -> Result<ResidualReport> {
    let lift = lift_map(spec.clone())?;
    let points = sample_blowup_points(spec.field(), spec.n(), sample_count, seed)?;
    let mut max_base = 0.0f64;
    let mut max_inc = 0.0f64;
    for p in &points {
        let image = lift.eval(p, 1e-6)?;
        let through_lift = model::blowdown(&image);
        let through_base = spec.eval(model::blowdown(p))?;
        max_base = max_base.max(linalg::dist(through_lift, &through_base));
        max_inc = max_inc.max(model::incidence_residual(image.base(), image.fiber())?);
    }
    Ok(ResidualReport {
        samples: points.len(),
        max_base_residual: max_base,
        max_fiber_residual: 0.0,
        max_incidence_residual: max_inc,
        tol,
        seed,
    })
}

/// Sampled verification that the lift of `g ∘ h` equals `ĝ ∘ ĥ`, comparing
/// base parts in Euclidean distance and fiber parts in the angle metric.
pub fn check_functoriality(
    g: &MapSpec,
    h: &MapSpec,
    sample_count: usize,
    tol: f64,
    seed: u64,
) -> Result<ResidualReport> {
    if g.n() != h.n() {
        return Err(Error::DimensionMismatch(g.n(), h.n()));
    }
    let lift_g = lift_map(g.clone())?;
    let lift_h = lift_map(h.clone())?;
    let composite = MapSpec::Composite(alloc::vec![g.clone(), h.clone()]);
    let lift_gh = lift_map(composite)?;
    let field = lift_gh.field();
    let points = sample_blowup_points(field, g.n(), sample_count, seed)?;
    let mut max_base = 0.0f64;
    let mut max_fiber = 0.0f64;
    for p in &points {
        let one_shot = lift_gh.eval(p, 1e-6)?;
        let two_step = lift_g.eval(&lift_h.eval(p, 1e-6)?, 1e-6)?;
        max_base = max_base.max(linalg::dist(one_shot.base(), two_step.base()));
        max_fiber = max_fiber.max(one_shot.fiber().proj_dist(two_step.fiber())?);
    }
    Ok(ResidualReport {
        samples: points.len(),
        max_base_residual: max_base,
        max_fiber_residual: max_fiber,
        max_incidence_residual: 0.0,
        tol,
        seed,
    })
}
