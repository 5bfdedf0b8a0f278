//! Conjugacy-induced variant blowups, the eigenvalue-allocation fixed-set
//! predictor, the tube homeomorphism on `S¹ × (0, ∞)`, and the constructive
//! witness that a homeomorphism fixing the origin need not lift through the
//! blowdown.
//!
//! A variant blowup keeps the incidence variety but replaces the blowdown by
//! `φ ∘ q` for a topological conjugacy `φ` between `h₁` and `h₀`; the lift of
//! `h₁` then covers `h₀` through the new blowdown, and the fixed set on `Σ`
//! is governed by `Dh₁|₀`, not `Dh₀|₀`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::dynamics::{self, FixedSetOnSigma};
use crate::linalg::{self, Field, Matrix, Matrix2OrBlock};
use crate::map::{self, LiftedMap, MapSpec, ResidualReport};
use crate::model::{self, BlowupPoint};
use crate::projective::{self, ProjPoint};
use crate::rng;
use crate::{Error, Result, SIGMA_CUTOFF};

// ---------------------------------------------------------------------------
// conjugacies

/// A global topological conjugacy of the plane (or of `F^n` in the trivial
/// case), fixing the origin, with a closed-form inverse.
#[derive(Debug, Clone, PartialEq)]
pub enum Conjugacy {
    Identity { field: Field, n: usize },
    /// Spiral unwinding `φ(r·e^{iα}) = r·e^{i(α + θ·ln r / ln λ)}` on R²,
    /// extended by `φ(0) = 0`. Conjugates `λ·I` to `λ·rotation(θ)`:
    /// homeomorphism, smooth off the origin, not differentiable at it.
    Spiral { lambda: f64, theta: f64 },
}

fn spiral_twist(lambda: f64, theta: f64, x: &[Complex64], sign: f64) -> Vec<Complex64> {
    let (a, b) = (x[0].re, x[1].re);
    let r = libm::sqrt(a * a + b * b);
    if r == 0.0 {
        return linalg::from_real(&[0.0, 0.0]);
    }
    let alpha = libm::atan2(b, a) + sign * theta * libm::log(r) / libm::log(lambda);
    linalg::from_real(&[r * libm::cos(alpha), r * libm::sin(alpha)])
}

impl Conjugacy {
    pub fn field(&self) -> Field {
        match self {
            Conjugacy::Identity { field, .. } => *field,
            Conjugacy::Spiral { .. } => Field::Real,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Conjugacy::Identity { n, .. } => *n,
            Conjugacy::Spiral { .. } => 2,
        }
    }

    pub fn forward(&self, x: &[Complex64]) -> Vec<Complex64> {
        match self {
            Conjugacy::Identity { .. } => x.to_vec(),
            Conjugacy::Spiral { lambda, theta } => spiral_twist(*lambda, *theta, x, 1.0),
        }
    }

    pub fn inverse(&self, x: &[Complex64]) -> Vec<Complex64> {
        match self {
            Conjugacy::Identity { .. } => x.to_vec(),
            Conjugacy::Spiral { lambda, theta } => spiral_twist(*lambda, *theta, x, -1.0),
        }
    }

    /// Max scaled residual of `φ(φ⁻¹(x)) − x` and `φ⁻¹(φ(x)) − x` over
    /// random samples with radii spread over several decades.
    pub fn roundtrip_residual(&self, samples: usize, seed: u64) -> f64 {
        let mut r = rng::seeded(seed);
        let mut worst = 0.0f64;
        for _ in 0..samples {
            let dir = rng::direction(&mut r, self.field(), self.n());
            let radius = libm::pow(10.0, r.gen_range(-6.0..3.0));
            let x = linalg::scale(&dir, Complex64::new(radius, 0.0));
            let fwd = linalg::dist(&self.inverse(&self.forward(&x)), &x);
            let bwd = linalg::dist(&self.forward(&self.inverse(&x)), &x);
            worst = worst.max(fwd.max(bwd) / (1.0 + radius));
        }
        worst
    }
}

/// The spiral-unwinding conjugacy from `h₁ = λ·I` to `h₀ = λ·rotation(θ)`.
pub fn spiral_conjugacy(lambda: f64, theta: f64) -> Result<Conjugacy> {
    if !(lambda > 1.0) || !lambda.is_finite() || !theta.is_finite() {
        return Err(Error::InvalidMapSpec(format!(
            "spiral conjugacy needs finite lambda > 1, got lambda = {lambda}"
        )));
    }
    if theta == 0.0 {
        return Ok(Conjugacy::Identity { field: Field::Real, n: 2 });
    }
    Ok(Conjugacy::Spiral { lambda, theta })
}

// ---------------------------------------------------------------------------
// variant blowup

/// The pair (blowdown `φ∘q`, lift `ĥ₁`) making the variant diagram commute
/// over `h₀`.
#[derive(Debug, Clone)]
pub struct VariantBlowup {
    h0: MapSpec,
    lift: LiftedMap,
    phi: Conjugacy,
}

impl VariantBlowup {
    /// The variant blowdown `v ↦ φ(q(v))`.
    pub fn blowdown(&self, p: &BlowupPoint) -> Vec<Complex64> {
        self.phi.forward(model::blowdown(p))
    }

    /// The covering homeomorphism: the classical lift of `h₁`.
    pub fn lift(&self) -> &LiftedMap {
        &self.lift
    }

    pub fn conjugacy(&self) -> &Conjugacy {
        &self.phi
    }

    pub fn base_map(&self) -> &MapSpec {
        &self.h0
    }

    /// `Fix(ĥ₁) ∩ Σ`, from `Dh₁|₀` — the conjugated map, not `h₀`.
    pub fn fixed_set(&self, tol: f64) -> Result<FixedSetOnSigma> {
        dynamics::fixed_set_on_sigma(self.lift.derivative(), tol)
    }
}

fn conjugacy_residual(
    h0: &MapSpec,
    h1: &MapSpec,
    phi: &Conjugacy,
    samples: usize,
    seed: u64,
) -> Result<f64> {
    let mut r = rng::seeded(seed);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let dir = rng::direction(&mut r, h0.field(), h0.n());
        let radius = libm::pow(10.0, r.gen_range(-6.0..3.0));
        let x = linalg::scale(&dir, Complex64::new(radius, 0.0));
        let left = phi.forward(&h1.eval(&x)?);
        let right = h0.eval(&phi.forward(&x))?;
        worst = worst.max(linalg::dist(&left, &right) / (1.0 + radius));
    }
    Ok(worst)
}

/// Builds the variant blowup of `h₀` through the conjugate `h₁` and `φ`,
/// verifying the conjugacy relation first and then the commuting diagram
/// `blowdown ∘ lift = h₀ ∘ blowdown` on random samples on and off `Σ`.
///
/// In the returned report `max_base_residual` is the diagram residual,
/// `max_fiber_residual` the conjugacy-relation residual, and
/// `max_incidence_residual` the incidence of the lift's outputs.
pub fn variant_blowup(
    h0: MapSpec,
    h1: MapSpec,
    phi: Conjugacy,
    samples: usize,
    tol: f64,
    seed: u64,
) -> Result<(VariantBlowup, ResidualReport)> {
    h0.validate()?;
    h1.validate()?;
    if h0.field() != phi.field() || h0.field() != h1.field() {
        return Err(Error::FieldMismatch);
    }
    if h0.n() != phi.n() || h0.n() != h1.n() {
        return Err(Error::DimensionMismatch(h0.n(), phi.n()));
    }
    let conj = conjugacy_residual(&h0, &h1, &phi, samples.min(2000).max(100), seed)?;
    if conj > tol {
        return Err(Error::ConjugacyFailed { residual: conj, tol });
    }
    let lift = map::lift_map(h1)?;
    let variant = VariantBlowup { h0, lift, phi };

    let mut r = rng::seeded(seed ^ 0x7a11_b007);
    let mut max_diagram = 0.0f64;
    let mut max_inc = 0.0f64;
    for i in 0..samples {
        let field = variant.h0.field();
        let n = variant.h0.n();
        let p = if i % 5 == 4 {
            let dir = rng::direction(&mut r, field, n);
            BlowupPoint::sigma_point(projective::normalize(field, &dir)?)
        } else {
            let dir = rng::direction(&mut r, field, n);
            let radius = libm::pow(10.0, r.gen_range(-3.0..0.5));
            model::lift_point(field, &linalg::scale(&dir, Complex64::new(radius, 0.0)), SIGMA_CUTOFF)?
        };
        let image = variant.lift.eval(&p, 1e-6)?;
        max_inc = max_inc.max(model::incidence_residual(image.base(), image.fiber())?);
        let through_lift = variant.blowdown(&image);
        let through_base = variant.h0.eval(&variant.blowdown(&p))?;
        let scale = 1.0 + linalg::norm(p.base());
        max_diagram = max_diagram.max(linalg::dist(&through_lift, &through_base) / scale);
    }
    let report = ResidualReport {
        samples,
        max_base_residual: max_diagram,
        max_fiber_residual: conj,
        max_incidence_residual: max_inc,
        tol,
        seed,
    };
    Ok((variant, report))
}

// ---------------------------------------------------------------------------
// eigenvalue allocation

/// An abstract hyperbolic eigenvalue allocation: dimensions of the stable and
/// unstable spaces, the multiplicities of the real eigenvalues in each, and
/// complex-conjugate pairs filling the (necessarily even) remainders.
#[derive(Debug, Clone, PartialEq)]
pub struct AllocationSpec {
    pub n: usize,
    pub dim_unstable: usize,
    pub dim_stable: usize,
    /// Multiplicities `k₁, …, k_q` of the distinct real unstable eigenvalues.
    pub unstable_real: Vec<usize>,
    /// Multiplicities `l₁, …, l_r` of the distinct real stable eigenvalues.
    pub stable_real: Vec<usize>,
}

impl AllocationSpec {
    pub fn validate(&self) -> Result<()> {
        if !(linalg::MIN_DIM..=linalg::MAX_DIM).contains(&self.n) {
            return Err(Error::DimensionOutOfRange(self.n));
        }
        if self.dim_unstable + self.dim_stable != self.n {
            return Err(Error::InvalidAllocation(format!(
                "dim E_u + dim E_s = {} + {} != n = {}",
                self.dim_unstable, self.dim_stable, self.n
            )));
        }
        for (mults, dim, side) in [
            (&self.unstable_real, self.dim_unstable, "unstable"),
            (&self.stable_real, self.dim_stable, "stable"),
        ] {
            if mults.iter().any(|&m| m == 0) {
                return Err(Error::InvalidAllocation(format!(
                    "{side} multiplicities must be >= 1"
                )));
            }
            let e: usize = mults.iter().sum();
            if e > dim {
                return Err(Error::InvalidAllocation(format!(
                    "{side} real multiplicities sum to {e} > dim {dim}"
                )));
            }
            if (dim - e) % 2 != 0 {
                return Err(Error::InvalidAllocation(format!(
                    "{side} complex remainder {} is odd; conjugate pairs need even dimension",
                    dim - e
                )));
            }
        }
        Ok(())
    }

    /// Number of complex-conjugate pair blocks on each side.
    pub fn complex_pairs(&self) -> (usize, usize) {
        let eu: usize = self.unstable_real.iter().sum();
        let es: usize = self.stable_real.iter().sum();
        ((self.dim_unstable - eu) / 2, (self.dim_stable - es) / 2)
    }
}

/// One predicted component of `Fix ∩ Σ` for a real hyperbolic allocation.
#[derive(Debug, Clone, PartialEq)]
pub struct PredictedComponent {
    pub stable: bool,
    pub multiplicity: usize,
    /// Projective dimension `m − 1`.
    pub proj_dim: usize,
    pub description: String,
}

/// The fixed set predicted by the allocation alone: one `RP^{m−1}` component
/// per real eigenvalue of multiplicity `m`, nothing from complex pairs.
/// All-complex allocations give the empty set.
pub fn predict_fixed_set(alloc: &AllocationSpec) -> Result<Vec<PredictedComponent>> {
    alloc.validate()?;
    let mut out = Vec::new();
    for (mults, stable) in [(&alloc.unstable_real, false), (&alloc.stable_real, true)] {
        for &m in mults.iter() {
            out.push(PredictedComponent {
                stable,
                multiplicity: m,
                proj_dim: m - 1,
                description: linalg::describe_component(Field::Real, m),
            });
        }
    }
    Ok(out)
}

/// A concrete block-diagonal matrix realizing the allocation: distinct real
/// eigenvalues per multiplicity block and rotation-scaling blocks for each
/// complex pair, all with pairwise distinct moduli.
pub fn synthesize_allocation(alloc: &AllocationSpec) -> Result<Matrix> {
    alloc.validate()?;
    const UNSTABLE_REAL: [f64; 8] = [2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0];
    const STABLE_REAL: [f64; 8] = [0.5, 0.35, 0.25, 0.15, 0.45, 0.3, 0.2, 0.1];
    const UNSTABLE_MOD: [f64; 4] = [1.3, 1.45, 1.6, 1.75];
    const STABLE_MOD: [f64; 4] = [0.62, 0.72, 0.82, 0.92];
    const THETAS: [f64; 4] = [0.9, 1.3, 2.1, 0.5];

    let mut blocks = Vec::new();
    for (i, &m) in alloc.unstable_real.iter().enumerate() {
        blocks.push(Matrix2OrBlock::ScaledIdentity {
            lambda: Complex64::new(UNSTABLE_REAL[i], 0.0),
            m,
        });
    }
    for (i, &m) in alloc.stable_real.iter().enumerate() {
        blocks.push(Matrix2OrBlock::ScaledIdentity {
            lambda: Complex64::new(STABLE_REAL[i], 0.0),
            m,
        });
    }
    let (cu, cs) = alloc.complex_pairs();
    for i in 0..cu {
        blocks.push(Matrix2OrBlock::RotationScaling { lambda: UNSTABLE_MOD[i], theta: THETAS[i] });
    }
    for i in 0..cs {
        blocks.push(Matrix2OrBlock::RotationScaling { lambda: STABLE_MOD[i], theta: THETAS[i] });
    }
    Matrix::block_diagonal(Field::Real, &blocks)
}

/// Cross-check of [`predict_fixed_set`] against the spectral computation on a
/// synthesized realization: component count and sorted projective dimensions
/// must agree exactly.
pub fn check_allocation(alloc: &AllocationSpec, tol: f64) -> Result<bool> {
    let predicted = predict_fixed_set(alloc)?;
    let computed = dynamics::fixed_set_on_sigma(&synthesize_allocation(alloc)?, tol)?;
    if predicted.len() != computed.components.len() {
        return Ok(false);
    }
    let mut pd: Vec<usize> = predicted.iter().map(|c| c.proj_dim).collect();
    let mut cd: Vec<usize> = computed.components.iter().map(|c| c.proj_dim()).collect();
    pd.sort_unstable();
    cd.sort_unstable();
    Ok(pd == cd)
}

/// Uniformly random valid allocation for the given dimension range.
pub fn random_allocation(r: &mut ChaCha8Rng) -> AllocationSpec {
    let n = r.gen_range(2..=linalg::MAX_DIM);
    let dim_unstable = r.gen_range(0..=n);
    let dim_stable = n - dim_unstable;
    let pick = |r: &mut ChaCha8Rng, dim: usize| -> Vec<usize> {
        // random real part of the same parity as a random even remainder
        let pairs = r.gen_range(0..=dim / 2);
        let mut left = dim - 2 * pairs;
        let mut mults = Vec::new();
        while left > 0 {
            let m = r.gen_range(1..=left);
            mults.push(m);
            left -= m;
        }
        mults
    };
    let unstable_real = pick(r, dim_unstable);
    let stable_real = pick(r, dim_stable);
    AllocationSpec { n, dim_unstable, dim_stable, unstable_real, stable_real }
}

// ---------------------------------------------------------------------------
// tube homeomorphism

/// A point of the tube `S¹ × (0, ∞)`: angle in radians, level `> 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TubePoint {
    pub angle: f64,
    pub level: f64,
}

/// Shortest signed arc from `b` to `a` in `(−π, π]`.
pub fn wrap_to_pi(x: f64) -> f64 {
    let mut y = libm::fmod(x, 2.0 * PI);
    if y > PI {
        y -= 2.0 * PI;
    } else if y <= -PI {
        y += 2.0 * PI;
    }
    y
}

/// Distance on `S¹` between angles.
pub fn circle_dist(a: f64, b: f64) -> f64 {
    wrap_to_pi(a - b).abs()
}

/// The level-preserving skeleton of Lemma-style tube homeomorphisms:
/// `g(α, s) = (α + δ(s), ψ(s))` with a piecewise-linear level
/// reparametrization `ψ` (identity at and below `ε`, slope 1 past the last
/// knot) and a piecewise-linear angular offset `δ` (0 at and below `ε`,
/// shortest-arc-unwrapped through the knots, constant past the last).
#[derive(Debug, Clone)]
pub struct TubeHomeo {
    eps: f64,
    /// source levels s_i (strictly increasing)
    src: Vec<f64>,
    /// target levels t_i (strictly increasing)
    dst: Vec<f64>,
    /// unwrapped angular offsets δ_i at the source levels
    deltas: Vec<f64>,
}

fn piecewise(knots_x: &[f64], knots_y: &[f64], eps: f64, eps_y: f64, x: f64) -> f64 {
    if x <= eps {
        return x - eps + eps_y;
    }
    let mut x0 = eps;
    let mut y0 = eps_y;
    for (xi, yi) in knots_x.iter().zip(knots_y) {
        if x <= *xi {
            return y0 + (x - x0) * (yi - y0) / (xi - x0);
        }
        x0 = *xi;
        y0 = *yi;
    }
    y0 + (x - x0)
}

impl TubeHomeo {
    pub fn epsilon(&self) -> f64 {
        self.eps
    }

    fn psi(&self, s: f64) -> f64 {
        piecewise(&self.src, &self.dst, self.eps, self.eps, s)
    }

    fn psi_inv(&self, t: f64) -> f64 {
        piecewise(&self.dst, &self.src, self.eps, self.eps, t)
    }

    fn delta(&self, s: f64) -> f64 {
        if s <= self.eps {
            return 0.0;
        }
        piecewise_delta(&self.src, &self.deltas, self.eps, s)
    }

    pub fn eval(&self, p: TubePoint) -> TubePoint {
        TubePoint { angle: p.angle + self.delta(p.level), level: self.psi(p.level) }
    }

    pub fn eval_inverse(&self, p: TubePoint) -> TubePoint {
        let s = self.psi_inv(p.level);
        TubePoint { angle: p.angle - self.delta(s), level: s }
    }

    /// The induced map of the punctured plane under `t = −ln r`, extended by
    /// the identity for `|p| ≥ e^{−ε}` and by `h(0) = 0`.
    pub fn planar(&self, p: &[f64]) -> [f64; 2] {
        let r = libm::sqrt(p[0] * p[0] + p[1] * p[1]);
        if r == 0.0 {
            return [0.0, 0.0];
        }
        let q = self.eval(TubePoint { angle: libm::atan2(p[1], p[0]), level: -libm::log(r) });
        let rr = libm::exp(-q.level);
        [rr * libm::cos(q.angle), rr * libm::sin(q.angle)]
    }

    pub fn planar_inverse(&self, p: &[f64]) -> [f64; 2] {
        let r = libm::sqrt(p[0] * p[0] + p[1] * p[1]);
        if r == 0.0 {
            return [0.0, 0.0];
        }
        let q =
            self.eval_inverse(TubePoint { angle: libm::atan2(p[1], p[0]), level: -libm::log(r) });
        let rr = libm::exp(-q.level);
        [rr * libm::cos(q.angle), rr * libm::sin(q.angle)]
    }
}

fn piecewise_delta(src: &[f64], deltas: &[f64], eps: f64, s: f64) -> f64 {
    let mut x0 = eps;
    let mut y0 = 0.0;
    for (xi, yi) in src.iter().zip(deltas) {
        if s <= *xi {
            return y0 + (s - x0) * (yi - y0) / (xi - x0);
        }
        x0 = *xi;
        y0 = *yi;
    }
    y0
}

/// Builds the tube homeomorphism carrying each `x_i` to `y_i` exactly, with
/// the identity at and below level `ε`. Levels of both sequences must be
/// strictly increasing and `ε` must lie below both first levels.
pub fn tube_homeo(pairs: &[(TubePoint, TubePoint)], epsilon: f64) -> Result<TubeHomeo> {
    if pairs.is_empty() {
        return Ok(TubeHomeo { eps: epsilon, src: Vec::new(), dst: Vec::new(), deltas: Vec::new() });
    }
    let src: Vec<f64> = pairs.iter().map(|(x, _)| x.level).collect();
    let dst: Vec<f64> = pairs.iter().map(|(_, y)| y.level).collect();
    for seq in [&src, &dst] {
        if seq[0] <= 0.0 || seq.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::NonMonotoneLevels);
        }
    }
    let first = src[0].min(dst[0]);
    if !(epsilon > 0.0) || epsilon >= first {
        return Err(Error::EpsilonTooLarge { eps: epsilon, first });
    }
    // unwrap the angular offsets: each knot takes the representative of
    // (y_angle − x_angle) mod 2π nearest the previous knot's offset, so δ is
    // continuous and small where consecutive targets agree
    let mut deltas = Vec::with_capacity(pairs.len());
    let mut prev = 0.0;
    for (x, y) in pairs {
        let d = prev + wrap_to_pi(y.angle - x.angle - prev);
        deltas.push(d);
        prev = d;
    }
    Ok(TubeHomeo { eps: epsilon, src, dst, deltas })
}

// ---------------------------------------------------------------------------
// no-lift witness

/// Radii along which the witness sequences descend to the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct SequenceSchedule {
    pub radii: Vec<f64>,
}

impl SequenceSchedule {
    /// `r_i = 2^{−i}` for `i = 1..=count`.
    pub fn geometric(count: usize) -> Self {
        SequenceSchedule {
            radii: (1..=count).map(|i| libm::pow(2.0, -(i as f64))).collect(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.radii.len() < 4
            || self.radii[0] >= 1.0
            || self.radii.iter().any(|&r| !(r > 0.0))
            || self.radii.windows(2).any(|w| w[1] >= w[0])
        {
            return Err(Error::BadRadiusSchedule);
        }
        Ok(())
    }
}

/// Certificate that the constructed homeomorphism `h` admits no continuous
/// lift: the candidate lift's fiber values along `x_i → (0, [x])` accumulate
/// at two projective points separated by `proj_dist(x, y)`.
#[derive(Debug, Clone)]
pub struct WitnessReport {
    pub cluster_points: Vec<ProjPoint>,
    pub separation: f64,
    /// Max `|q(z_i)|` over the last five indices.
    pub blowdown_limit_norm: f64,
    /// Max deviation of `h(q(x_i))` from `q(z_i)` over all indices.
    pub knot_max_error: f64,
    /// Max `|h⁻¹(h(p)) − p|` over a sampled annulus grid.
    pub roundtrip_max_error: f64,
    pub verdict: &'static str,
}

impl WitnessReport {
    pub fn pass(&self, expected_separation: f64, tol: f64) -> bool {
        self.separation >= expected_separation - tol
            && self.knot_max_error <= 1e-12
            && self.roundtrip_max_error <= 1e-9
    }
}

fn rep_angle(p: &ProjPoint) -> f64 {
    libm::atan2(p.homog()[1].re, p.homog()[0].re)
}

/// Builds the interleaved sequence `z_i` (alternating descent toward `[x]`
/// and `[y]` at radii `r_i`), the tube homeomorphism realizing
/// `h(q(x_i)) = q(z_i)` under `t = −ln r`, and the two-cluster certificate.
/// Real planar case only; the targets must be separated by at least `0.1`.
pub fn no_lift_witness(
    x: &ProjPoint,
    y: &ProjPoint,
    schedule: &SequenceSchedule,
) -> Result<WitnessReport> {
    if x.field() != Field::Real || y.field() != Field::Real {
        return Err(Error::Unsupported(String::from("no-lift witness is real-planar only")));
    }
    if x.dim() != 2 || y.dim() != 2 {
        return Err(Error::DimensionOutOfRange(x.dim().max(y.dim())));
    }
    let separation = projective::proj_dist(x, y)?;
    if separation < 0.1 {
        return Err(Error::Unsupported(format!(
            "witness targets must satisfy proj_dist >= 0.1, got {separation}"
        )));
    }
    schedule.validate()?;

    let ax = rep_angle(x);
    let ay = rep_angle(y);
    let count = schedule.radii.len();

    // x_i descends along [x]; z_i alternates between the two directions at
    // the same radii, so the level map of the tube homeomorphism is trivial
    let mut xs: Vec<BlowupPoint> = Vec::with_capacity(count);
    let mut zs: Vec<BlowupPoint> = Vec::with_capacity(count);
    for (i, &r) in schedule.radii.iter().enumerate() {
        let xi = linalg::scale(x.homog(), Complex64::new(r, 0.0));
        xs.push(model::lift_point(Field::Real, &xi, SIGMA_CUTOFF)?);
        let target = if i % 2 == 0 { x } else { y };
        let zi = linalg::scale(target.homog(), Complex64::new(r, 0.0));
        zs.push(model::lift_point(Field::Real, &zi, SIGMA_CUTOFF)?);
    }

    let levels: Vec<f64> = schedule.radii.iter().map(|&r| -libm::log(r)).collect();
    let eps = levels[0] / 2.0;
    let pairs: Vec<(TubePoint, TubePoint)> = (0..count)
        .map(|i| {
            let target_angle = if i % 2 == 0 { ax } else { ay };
            (
                TubePoint { angle: ax, level: levels[i] },
                TubePoint { angle: target_angle, level: levels[i] },
            )
        })
        .collect();
    let g = tube_homeo(&pairs, eps)?;

    // knot exactness of h(q(x_i)) = q(z_i), in the plane
    let mut knot_err = 0.0f64;
    for (xi, zi) in xs.iter().zip(&zs) {
        let image = g.planar(&[xi.base()[0].re, xi.base()[1].re]);
        let want = [zi.base()[0].re, zi.base()[1].re];
        knot_err = knot_err
            .max(libm::sqrt((image[0] - want[0]).powi(2) + (image[1] - want[1]).powi(2)));
    }

    // constructive inverse on a grid spanning the knot annuli
    let mut roundtrip = 0.0f64;
    let t_max = levels[count - 1] * 1.2;
    for ia in 0..40 {
        let angle = 2.0 * PI * (ia as f64) / 40.0;
        for il in 0..40 {
            let level = eps * 0.5 + (t_max - eps * 0.5) * (il as f64) / 39.0;
            let r = libm::exp(-level);
            let p = [r * libm::cos(angle), r * libm::sin(angle)];
            let back = g.planar_inverse(&g.planar(&p));
            let fwd = g.planar(&g.planar_inverse(&p));
            for q in [back, fwd] {
                roundtrip = roundtrip
                    .max(libm::sqrt((q[0] - p[0]).powi(2) + (q[1] - p[1]).powi(2)) / (1.0 + r));
            }
        }
    }

    let blowdown_limit_norm = zs
        .iter()
        .rev()
        .take(5)
        .map(|z| linalg::norm(z.base()))
        .fold(0.0f64, f64::max);

    // cluster points of the candidate lift's fiber values along x_i
    let even = model::bundle_projection(&zs[0]).clone();
    let odd = model::bundle_projection(&zs[1]).clone();
    let separation = projective::proj_dist(&even, &odd)?;

    Ok(WitnessReport {
        cluster_points: alloc::vec![even, odd],
        separation,
        blowdown_limit_norm,
        knot_max_error: knot_err,
        roundtrip_max_error: roundtrip,
        verdict: "no_continuous_lift",
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_TOL;
    use core::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_6};

    #[test]
    fn spiral_identities() {
        // theta = 0 degenerates to the identity
        assert_eq!(
            spiral_conjugacy(2.0, 0.0).unwrap(),
            Conjugacy::Identity { field: Field::Real, n: 2 }
        );
        assert!(spiral_conjugacy(1.0, 0.3).is_err());

        let phi = spiral_conjugacy(2.0, FRAC_PI_3).unwrap();
        // algebraic identity: phi(h1(x)) = h0(phi(x)) at (1, 0)
        let h1 = MapSpec::Linear(Matrix::from_rows(&[&[2.0, 0.0], &[0.0, 2.0]]).unwrap());
        let h0 = MapSpec::RotationScaling { lambda: 2.0, theta: FRAC_PI_3 };
        let x = linalg::from_real(&[1.0, 0.0]);
        let left = phi.forward(&h1.eval(&x).unwrap());
        let right = h0.eval(&phi.forward(&x)).unwrap();
        assert!(linalg::dist(&left, &right) < 1e-12);

        // radius preservation and roundtrip
        assert!((linalg::norm(&phi.forward(&linalg::from_real(&[0.3, -0.4]))) - 0.5) < 1e-14);
        assert!(phi.roundtrip_residual(500, 7) < 1e-12);
        assert_eq!(phi.forward(&linalg::from_real(&[0.0, 0.0])), linalg::from_real(&[0.0, 0.0]));
    }

    #[test]
    fn spiral_conjugacy_relation_sampled() {
        let res = conjugacy_residual(
            &MapSpec::RotationScaling { lambda: 2.0, theta: 1.1 },
            &MapSpec::Linear(Matrix::from_rows(&[&[2.0, 0.0], &[0.0, 2.0]]).unwrap()),
            &spiral_conjugacy(2.0, 1.1).unwrap(),
            2000,
            11,
        )
        .unwrap();
        assert!(res < 1e-10, "residual {res}");
    }

    #[test]
    fn variant_contrast() {
        // classical blowup of 2·rotation(pi/6): no real eigendirections
        let h0 = MapSpec::RotationScaling { lambda: 2.0, theta: FRAC_PI_6 };
        let classical =
            dynamics::fixed_set_on_sigma(&h0.derivative_at_origin().unwrap(), DEFAULT_TOL).unwrap();
        assert!(classical.components.is_empty());

        // variant through 2·I: all of Sigma = RP^1
        let h1 = MapSpec::Linear(Matrix::from_rows(&[&[2.0, 0.0], &[0.0, 2.0]]).unwrap());
        let phi = spiral_conjugacy(2.0, FRAC_PI_6).unwrap();
        let (variant, report) = variant_blowup(h0, h1, phi, 2000, 1e-9, 42).unwrap();
        assert!(report.pass(), "diagram residual {}", report.max_residual());
        let fix = variant.fixed_set(DEFAULT_TOL).unwrap();
        assert_eq!(fix.components.len(), 1);
        assert_eq!(fix.components[0].proj_dim(), 1); // RP^1
    }

    #[test]
    fn identity_conjugacy_gives_classical() {
        let h = MapSpec::Linear(Matrix::from_rows(&[&[3.0, 0.0], &[0.0, 1.0]]).unwrap());
        let phi = Conjugacy::Identity { field: Field::Real, n: 2 };
        let (variant, report) = variant_blowup(h.clone(), h.clone(), phi, 1000, 1e-10, 9).unwrap();
        assert!(report.pass());
        // blowdown coincides with q
        let p = model::lift_point_real(&[0.3, 0.7], SIGMA_CUTOFF).unwrap();
        assert_eq!(variant.blowdown(&p), model::blowdown(&p).to_vec());
    }

    #[test]
    fn conjugacy_check_rejects_mismatch() {
        let h0 = MapSpec::RotationScaling { lambda: 2.0, theta: FRAC_PI_6 };
        let h1 = MapSpec::Linear(Matrix::from_rows(&[&[2.0, 0.0], &[0.0, 2.0]]).unwrap());
        let wrong = Conjugacy::Identity { field: Field::Real, n: 2 };
        assert!(matches!(
            variant_blowup(h0, h1, wrong, 500, 1e-9, 3),
            Err(Error::ConjugacyFailed { .. })
        ));
    }

    #[test]
    fn allocation_examples() {
        // n=4, all complex pairs -> empty
        let a = AllocationSpec {
            n: 4,
            dim_unstable: 2,
            dim_stable: 2,
            unstable_real: alloc::vec![],
            stable_real: alloc::vec![],
        };
        assert!(predict_fixed_set(&a).unwrap().is_empty());
        assert!(check_allocation(&a, DEFAULT_TOL).unwrap());

        // n=4, 2 distinct real unstable + 1 complex pair -> 2 isolated points
        let b = AllocationSpec {
            n: 4,
            dim_unstable: 2,
            dim_stable: 2,
            unstable_real: alloc::vec![1, 1],
            stable_real: alloc::vec![],
        };
        let pb = predict_fixed_set(&b).unwrap();
        assert_eq!(pb.len(), 2);
        assert!(pb.iter().all(|c| c.proj_dim == 0));
        assert!(check_allocation(&b, DEFAULT_TOL).unwrap());

        // n=5, real multiplicity 3 + complex pair -> one RP^2 component
        let c = AllocationSpec {
            n: 5,
            dim_unstable: 3,
            dim_stable: 2,
            unstable_real: alloc::vec![3],
            stable_real: alloc::vec![],
        };
        let pc = predict_fixed_set(&c).unwrap();
        assert_eq!(pc.len(), 1);
        assert_eq!(pc[0].proj_dim, 2);
        assert!(pc[0].description.contains("RP^2"));
        assert!(check_allocation(&c, DEFAULT_TOL).unwrap());
    }

    #[test]
    fn allocation_validation() {
        let odd_remainder = AllocationSpec {
            n: 3,
            dim_unstable: 3,
            dim_stable: 0,
            unstable_real: alloc::vec![2],
            stable_real: alloc::vec![],
        };
        assert!(matches!(odd_remainder.validate(), Err(Error::InvalidAllocation(_))));
        let bad_sum = AllocationSpec {
            n: 4,
            dim_unstable: 1,
            dim_stable: 2,
            unstable_real: alloc::vec![1],
            stable_real: alloc::vec![],
        };
        assert!(bad_sum.validate().is_err());
    }

    #[test]
    fn random_allocations_check_out() {
        let mut r = rng::seeded(2024);
        for _ in 0..25 {
            let a = random_allocation(&mut r);
            a.validate().unwrap();
            assert!(check_allocation(&a, DEFAULT_TOL).unwrap(), "alloc {a:?}");
        }
    }

    #[test]
    fn tube_identity_and_single_pair() {
        // x_i = y_i -> identity
        let pairs: Vec<_> = (1..=5)
            .map(|i| {
                let p = TubePoint { angle: 0.7, level: i as f64 };
                (p, p)
            })
            .collect();
        let g = tube_homeo(&pairs, 0.5).unwrap();
        let p = TubePoint { angle: 1.9, level: 2.3 };
        let q = g.eval(p);
        assert!(circle_dist(q.angle, p.angle) < 1e-15 && (q.level - p.level).abs() < 1e-15);

        // single pair: quarter rotation at level 1, identity below eps
        let g = tube_homeo(
            &[(TubePoint { angle: 0.0, level: 1.0 }, TubePoint { angle: FRAC_PI_2, level: 1.0 })],
            0.25,
        )
        .unwrap();
        let at_knot = g.eval(TubePoint { angle: 0.0, level: 1.0 });
        assert!(circle_dist(at_knot.angle, FRAC_PI_2) < 1e-15);
        assert!((at_knot.level - 1.0).abs() < 1e-15);
        // midpoint between eps and the knot rotates by half the offset
        let mid = g.eval(TubePoint { angle: 0.0, level: 0.625 });
        assert!(circle_dist(mid.angle, FRAC_PI_2 / 2.0) < 1e-12);
        let below = g.eval(TubePoint { angle: 0.4, level: 0.2 });
        assert!(circle_dist(below.angle, 0.4) < 1e-15 && (below.level - 0.2).abs() < 1e-15);
    }

    #[test]
    fn tube_bijection_grid() {
        let pairs: Vec<_> = (1..=6)
            .map(|i| {
                (
                    TubePoint { angle: 0.0, level: i as f64 },
                    TubePoint { angle: if i % 2 == 0 { 1.2 } else { -0.8 }, level: i as f64 + 0.3 },
                )
            })
            .collect();
        let g = tube_homeo(&pairs, 0.4).unwrap();
        let mut worst = 0.0f64;
        for ia in 0..100 {
            let a = 2.0 * PI * ia as f64 / 100.0;
            for il in 0..100 {
                let l = 0.1 + 8.0 * il as f64 / 99.0;
                let p = TubePoint { angle: a, level: l };
                let q = g.eval_inverse(g.eval(p));
                worst = worst.max(circle_dist(q.angle, p.angle).max((q.level - p.level).abs()));
                let q = g.eval(g.eval_inverse(p));
                worst = worst.max(circle_dist(q.angle, p.angle).max((q.level - p.level).abs()));
            }
        }
        assert!(worst < 1e-10, "roundtrip {worst}");
    }

    #[test]
    fn tube_rejects_bad_input() {
        let p = TubePoint { angle: 0.0, level: 2.0 };
        let q = TubePoint { angle: 0.0, level: 1.0 };
        assert!(matches!(tube_homeo(&[(p, p), (q, q)], 0.1), Err(Error::NonMonotoneLevels)));
        assert!(matches!(
            tube_homeo(&[(q, q)], 1.5),
            Err(Error::EpsilonTooLarge { .. })
        ));
    }

    #[test]
    fn witness_orthogonal_targets() {
        let x = projective::normalize_real(&[1.0, 0.0]).unwrap();
        let y = projective::normalize_real(&[0.0, 1.0]).unwrap();
        let report = no_lift_witness(&x, &y, &SequenceSchedule::geometric(20)).unwrap();
        assert!((report.separation - FRAC_PI_2).abs() < 1e-12);
        assert!(report.knot_max_error <= 1e-12, "knots {}", report.knot_max_error);
        assert!(report.roundtrip_max_error <= 1e-9, "roundtrip {}", report.roundtrip_max_error);
        // q(z_i) -> 0: last radii dominate
        assert!(report.blowdown_limit_norm <= libm::pow(2.0, -16.0));
        assert_eq!(report.verdict, "no_continuous_lift");
        assert!(report.pass(FRAC_PI_2, 1e-6));
    }

    #[test]
    fn witness_rejects_bad_schedules() {
        let x = projective::normalize_real(&[1.0, 0.0]).unwrap();
        let y = projective::normalize_real(&[0.0, 1.0]).unwrap();
        let close = projective::normalize_real(&[1.0, 0.01]).unwrap();
        assert!(no_lift_witness(&x, &close, &SequenceSchedule::geometric(20)).is_err());
        let bad = SequenceSchedule { radii: alloc::vec![0.5, 0.6, 0.3, 0.1] };
        assert!(matches!(
            no_lift_witness(&x, &y, &bad),
            Err(Error::BadRadiusSchedule)
        ));
    }
}
