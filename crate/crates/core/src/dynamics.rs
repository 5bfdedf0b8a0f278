//! Dynamics of lifted maps on and near `Σ`: the projectivized restriction,
//! fixed sets from geometric eigenspaces with a brute-force sampling oracle,
//! orbit iteration, and invariant-subspace tracing.

use alloc::string::String;
use alloc::vec::Vec;
use num_complex::Complex64;

use crate::linalg::{self, eigen_decompose, is_invertible, Field, Matrix};
use crate::map::MapSpec;
use crate::model::{self, BlowupPoint};
use crate::projective::{self, ProjPoint};
use crate::{Error, Result, DEFAULT_TOL};

/// One component `P(E_λ)` of the fixed set on `Σ`.
#[derive(Debug, Clone)]
pub struct FixedComponent {
    pub lambda: Complex64,
    pub basis: Vec<Vec<Complex64>>,
    pub description: String,
}

impl FixedComponent {
    /// Projective dimension `m − 1`.
    pub fn proj_dim(&self) -> usize {
        self.basis.len() - 1
    }
}

/// `Fix(ĥ) ∩ Σ` as a disjoint union of projectivized eigenspaces. Over R the
/// component list may be empty; complex-conjugate eigenvalue pairs are kept
/// separately as rotational classes for diagnostics.
#[derive(Debug, Clone)]
pub struct FixedSetOnSigma {
    pub field: Field,
    pub components: Vec<FixedComponent>,
    pub rotational_classes: Vec<Complex64>,
}

/// The restriction of the lift to `Σ`: the projectivization of `d0`.
#[derive(Debug, Clone)]
pub struct SigmaMap {
    d0: Matrix,
}

pub fn sigma_map(d0: &Matrix) -> Result<SigmaMap> {
    if !is_invertible(d0, DEFAULT_TOL) {
        return Err(Error::SingularMatrix { tol: DEFAULT_TOL });
    }
    Ok(SigmaMap { d0: d0.clone() })
}

impl SigmaMap {
    pub fn matrix(&self) -> &Matrix {
        &self.d0
    }

    pub fn eval(&self, p: &ProjPoint) -> Result<ProjPoint> {
        projective::projectivize_linear(&self.d0, p)
    }
}

/// Fixed set of the projectivized derivative via `ker(λI − A)`, one component
/// per admissible eigenvalue cluster.
pub fn fixed_set_on_sigma(d0: &Matrix, tol: f64) -> Result<FixedSetOnSigma> {
    if !is_invertible(d0, tol) {
        return Err(Error::SingularMatrix { tol });
    }
    let comps = eigen_decompose(d0, tol)?;
    let components = comps
        .iter()
        .map(|c| FixedComponent {
            lambda: c.lambda,
            basis: c.basis.clone(),
            description: linalg::describe_component(d0.field(), c.geometric_multiplicity()),
        })
        .collect();
    let rotational_classes = if d0.field() == Field::Real {
        let all = linalg::eigenvalues(d0);
        let scale = d0.frobenius_norm().max(1.0);
        all.into_iter()
            .filter(|l| l.im > f64::max(tol, 2e-7 * scale))
            .collect()
    } else {
        Vec::new()
    };
    Ok(FixedSetOnSigma { field: d0.field(), components, rotational_classes })
}

/// Sample points of the projective space for the brute-force scan.
/// Supported: RP^1, RP^2 (real n = 2, 3) and CP^1 (complex n = 2).
fn sample_projective_space(field: Field, n: usize, resolution: usize) -> Result<Vec<ProjPoint>> {
    let mut out = Vec::with_capacity(resolution);
    match (field, n) {
        (Field::Real, 2) => {
            for i in 0..resolution {
                let theta = core::f64::consts::PI * i as f64 / resolution as f64;
                out.push(projective::normalize_real(&[libm::cos(theta), libm::sin(theta)])?);
            }
        }
        (Field::Real, 3) => {
            // Fibonacci sphere; antipodal duplicates are harmless on RP^2
            let golden = (1.0 + libm::sqrt(5.0)) / 2.0;
            for i in 0..resolution {
                let z = 1.0 - 2.0 * (i as f64 + 0.5) / resolution as f64;
                let r = libm::sqrt((1.0 - z * z).max(0.0));
                let phi = 2.0 * core::f64::consts::PI * (i as f64 / golden);
                out.push(projective::normalize_real(&[
                    r * libm::cos(phi),
                    r * libm::sin(phi),
                    z,
                ])?);
            }
        }
        (Field::Complex, 2) => {
            // CP^1 as the round sphere: (φ, ψ) ↦ [cos(φ/2), sin(φ/2) e^{iψ}]
            let golden = (1.0 + libm::sqrt(5.0)) / 2.0;
            for i in 0..resolution {
                let z = 1.0 - 2.0 * (i as f64 + 0.5) / resolution as f64;
                let phi = libm::acos(z.clamp(-1.0, 1.0));
                let psi = 2.0 * core::f64::consts::PI * (i as f64 / golden);
                let a = Complex64::new(libm::cos(phi / 2.0), 0.0);
                let b = Complex64::new(0.0, psi).exp() * libm::sin(phi / 2.0);
                out.push(projective::normalize(Field::Complex, &[a, b])?);
            }
        }
        _ => {
            return Err(Error::Unsupported(String::from(
                "brute-force scan supports real n in {2, 3} and complex n = 2",
            )))
        }
    }
    Ok(out)
}

fn scan_spacing(field: Field, n: usize, resolution: usize) -> f64 {
    let dim = match (field, n) {
        (Field::Real, 2) => 1.0,
        _ => 2.0,
    };
    core::f64::consts::PI * libm::pow(1.0 / resolution as f64, 1.0 / dim)
}

/// Grid scan for approximate fixed points of a projective self-map, clustered
/// by proximity. Independent of the eigenspace route; serves as its oracle.
pub fn brute_force_fixed_scan(
    map: &SigmaMap,
    resolution: usize,
    tol: f64,
) -> Result<Vec<ProjPoint>> {
    if resolution < 1000 {
        return Err(Error::Unsupported(String::from(
            "scan resolution must be at least 1000 samples",
        )));
    }
    let field = map.matrix().field();
    let n = map.matrix().dim();
    let samples = sample_projective_space(field, n, resolution)?;
    let spacing = scan_spacing(field, n, resolution);
    // a grid point can sit up to ~spacing/2 from a fixed point, where the
    // residual is already O(spacing); the hit threshold must see that far,
    // and the refinement pass below restores the accuracy `tol` asks for
    let hit_threshold = tol.max(3.0 * spacing);
    let mut hits: Vec<(ProjPoint, f64)> = Vec::new();
    for p in &samples {
        let residual = p.proj_dist(&map.eval(p)?)?;
        if residual <= hit_threshold {
            hits.push((p.clone(), residual));
        }
    }
    // single-linkage clustering with radius a few grid spacings, so a band
    // of grid-adjacent hits stays one cluster; member lists are capped to
    // keep the identity map (everything fixed) tractable
    let radius = 5.0 * spacing;
    struct Cluster {
        members: Vec<ProjPoint>,
        best: ProjPoint,
        best_residual: f64,
    }
    let mut clusters: Vec<Cluster> = Vec::new();
    'hits: for (h, residual) in hits {
        for c in clusters.iter_mut() {
            let close = c
                .members
                .iter()
                .any(|m| matches!(m.proj_dist(&h), Ok(d) if d <= radius));
            if close {
                if residual < c.best_residual {
                    c.best = h.clone();
                    c.best_residual = residual;
                }
                if c.members.len() < 64 {
                    c.members.push(h);
                }
                continue 'hits;
            }
        }
        clusters.push(Cluster {
            members: alloc::vec![h.clone()],
            best: h,
            best_residual: residual,
        });
    }
    // merge pass: a late hit can join an early cluster while the hits between
    // them formed their own (e.g. a band wrapping around the grid seam)
    let mut merged = true;
    while merged {
        merged = false;
        'pairs: for i in 0..clusters.len() {
            for j in (i + 1)..clusters.len() {
                let touch = clusters[i].members.iter().any(|a| {
                    clusters[j]
                        .members
                        .iter()
                        .any(|b| matches!(a.proj_dist(b), Ok(d) if d <= radius))
                });
                if touch {
                    let Cluster { mut members, best, best_residual } = clusters.swap_remove(j);
                    let keep = &mut clusters[i];
                    if best_residual < keep.best_residual {
                        keep.best = best;
                        keep.best_residual = best_residual;
                    }
                    while keep.members.len() < 64 {
                        match members.pop() {
                            Some(m) => keep.members.push(m),
                            None => break,
                        }
                    }
                    merged = true;
                    break 'pairs;
                }
            }
        }
    }
    Ok(clusters
        .into_iter()
        .map(|c| refine_fixed_point(map, &c.best, spacing))
        .collect())
}

/// Pattern-search refinement of an approximate fixed point in an affine
/// chart, driven only by the fixed-point residual — no spectral data, so the
/// scan stays an independent oracle for the eigenspace route. Falls back to
/// the input on any evaluation failure.
fn refine_fixed_point(map: &SigmaMap, start: &ProjPoint, step0: f64) -> ProjPoint {
    let field = start.field();
    let complex = field == Field::Complex;
    let chart = crate::projective::best_chart(start);
    let residual_of = |p: &ProjPoint| -> Option<f64> {
        map.eval(p).ok().and_then(|q| p.proj_dist(&q).ok())
    };
    let Ok(mut coords) = crate::projective::chart_coords(start, chart, 1e-6) else {
        return start.clone();
    };
    let embed = |c: &[Complex64]| crate::projective::chart_embed(field, c, chart).ok();
    let Some(mut best_point) = embed(&coords) else { return start.clone() };
    let Some(mut best) = residual_of(&best_point) else { return start.clone() };
    let mut step = step0;
    let mut budget = 400usize;
    while step > 1e-7 && budget > 0 {
        let mut improved = false;
        'axes: for d in 0..coords.len() {
            let dirs: &[Complex64] = if complex {
                &[Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)]
            } else {
                &[Complex64::new(1.0, 0.0)]
            };
            for dir in dirs {
                for sign in [1.0, -1.0] {
                    if budget == 0 {
                        break 'axes;
                    }
                    budget -= 1;
                    let mut trial = coords.clone();
                    trial[d] += sign * step * dir;
                    if let Some(p) = embed(&trial) {
                        if let Some(r) = residual_of(&p) {
                            if r < best {
                                best = r;
                                best_point = p;
                                coords = trial;
                                improved = true;
                            }
                        }
                    }
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    best_point
}

/// Orbit of a projective point under the `Σ`-restriction; `points.len() = n + 1`.
pub fn iterate_sigma_orbit(map: &SigmaMap, start: &ProjPoint, n: usize) -> Result<Vec<ProjPoint>> {
    let mut points = Vec::with_capacity(n + 1);
    points.push(start.clone());
    for i in 0..n {
        let next = map
            .eval(points.last().unwrap())
            .map_err(|e| Error::OrbitFailure { index: i, source: alloc::boxed::Box::new(e) })?;
        points.push(next);
    }
    Ok(points)
}

/// Orbit of a point of `X` under a lifted map. Fiber coordinates renormalize
/// every step (built into the evaluator); base coordinates never do.
pub fn iterate_lift_orbit(
    lift: &crate::map::LiftedMap,
    start: &BlowupPoint,
    n: usize,
    tol: f64,
) -> Result<Vec<BlowupPoint>> {
    let mut points = Vec::with_capacity(n + 1);
    points.push(start.clone());
    for i in 0..n {
        let next = lift
            .eval(points.last().unwrap(), tol)
            .map_err(|e| Error::OrbitFailure { index: i, source: alloc::boxed::Box::new(e) })?;
        points.push(next);
    }
    Ok(points)
}

/// Deviation report for a claimed invariant subspace.
#[derive(Debug, Clone)]
pub struct TraceReport {
    /// Max angle from a lifted sample's fiber to the projectivized subspace.
    pub max_deviation: f64,
    /// Fiber points of the smallest-scale samples: where the trace meets `Σ`.
    pub sigma_meeting_points: Vec<ProjPoint>,
}

/// Trace how the lift of an invariant subspace `E` meets `Σ`: fibers of
/// lifted points of `E` must stay in `P(E)` as the scale drops to zero.
pub fn invariant_subspace_trace(
    spec: &MapSpec,
    subspace: &[Vec<Complex64>],
    scales: &[f64],
    tol: f64,
) -> Result<TraceReport> {
    spec.validate()?;
    let d0 = spec.derivative_at_origin()?;
    let basis = linalg::orthonormalize(subspace, 1e-12);
    if basis.is_empty() {
        return Err(Error::ZeroVector);
    }
    if scales.is_empty() || scales.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::BadStepSchedule);
    }
    // invariance of E under d0: residual of projecting A·E off E
    let mut inv_residual = 0.0f64;
    for v in &basis {
        let av = d0.mat_vec(v)?;
        let mut off = av.clone();
        for u in &basis {
            let c = linalg::dot(u, &av);
            for (oi, ui) in off.iter_mut().zip(u) {
                *oi -= c * ui;
            }
        }
        inv_residual = inv_residual.max(linalg::norm(&off));
    }
    if inv_residual > tol {
        return Err(Error::NotInvariant { residual: inv_residual, tol });
    }
    let field = spec.field();
    let mut max_dev = 0.0f64;
    let mut meeting = Vec::new();
    // a fixed spread of directions inside E
    let dirs: Vec<Vec<Complex64>> = if basis.len() == 1 {
        alloc::vec![basis[0].clone()]
    } else {
        let mut ds = basis.clone();
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                let mut v = linalg::add(&basis[i], &basis[j]);
                let nv = linalg::norm(&v);
                for z in v.iter_mut() {
                    *z /= nv;
                }
                ds.push(v);
            }
        }
        ds
    };
    for (di, dir) in dirs.iter().enumerate() {
        for (si, &s) in scales.iter().enumerate() {
            let x = linalg::scale(dir, Complex64::new(s, 0.0));
            let lifted = model::lift_point(field, &x, crate::SIGMA_CUTOFF)?;
            let fiber = model::bundle_projection(&lifted);
            max_dev = max_dev.max(projective::dist_to_projectivized_subspace(fiber, &basis)?);
            if si == scales.len() - 1 && di < basis.len() {
                meeting.push(fiber.clone());
            }
        }
    }
    Ok(TraceReport { max_deviation: max_dev, sigma_meeting_points: meeting })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::lift_map;
    use crate::projective::normalize_real;
    use core::f64::consts::{FRAC_PI_2, FRAC_PI_6};

    #[test]
    fn sigma_map_examples() {
        let id = Matrix::identity(Field::Real, 2).unwrap();
        let m = sigma_map(&id).unwrap();
        let p = normalize_real(&[0.3, 0.9]).unwrap();
        assert!(m.eval(&p).unwrap().approx_eq(&p, 1e-15));

        let d = Matrix::from_rows(&[&[2.0, 0.0], &[0.0, 3.0]]).unwrap();
        let m = sigma_map(&d).unwrap();
        let p = normalize_real(&[1.0, 1.0]).unwrap();
        assert!(m.eval(&p).unwrap().approx_eq(&normalize_real(&[2.0, 3.0]).unwrap(), 1e-12));

        // quarter rotation has period 2 on RP^1
        let r = sigma_map(&Matrix::rotation(FRAC_PI_2)).unwrap();
        let e1 = normalize_real(&[1.0, 0.0]).unwrap();
        let e2 = normalize_real(&[0.0, 1.0]).unwrap();
        let once = r.eval(&e1).unwrap();
        assert!(once.approx_eq(&e2, 1e-12));
        assert!(r.eval(&once).unwrap().approx_eq(&e1, 1e-12));
    }

    #[test]
    fn fixed_set_examples() {
        let d = Matrix::from_rows(&[&[2.0, 0.0], &[0.0, 3.0]]).unwrap();
        let fs = fixed_set_on_sigma(&d, DEFAULT_TOL).unwrap();
        assert_eq!(fs.components.len(), 2);
        assert!(fs.components.iter().all(|c| c.proj_dim() == 0));

        // no real eigenvectors: empty fixed set, one rotational class
        let rot = Matrix::rotation_scaling(2.0, FRAC_PI_6);
        let fs = fixed_set_on_sigma(&rot, DEFAULT_TOL).unwrap();
        assert!(fs.components.is_empty());
        assert_eq!(fs.rotational_classes.len(), 1);

        // 2I on R^3: one component isomorphic to RP^2
        let two_i = Matrix::identity(Field::Real, 3).unwrap().scaled(Complex64::new(2.0, 0.0));
        let fs = fixed_set_on_sigma(&two_i, DEFAULT_TOL).unwrap();
        assert_eq!(fs.components.len(), 1);
        assert_eq!(fs.components[0].proj_dim(), 2);
    }

    #[test]
    fn scan_agrees_with_eigen_route() {
        let d = Matrix::from_rows(&[&[2.0, 0.0], &[0.0, 3.0]]).unwrap();
        let m = sigma_map(&d).unwrap();
        let clusters = brute_force_fixed_scan(&m, 10_000, 1e-3).unwrap();
        assert_eq!(clusters.len(), 2);
        let e1 = normalize_real(&[1.0, 0.0]).unwrap();
        let e2 = normalize_real(&[0.0, 1.0]).unwrap();
        for target in [e1, e2] {
            assert!(clusters.iter().any(|c| c.approx_eq(&target, 1e-3)));
        }

        let rot = Matrix::rotation_scaling(2.0, FRAC_PI_6);
        let m = sigma_map(&rot).unwrap();
        assert!(brute_force_fixed_scan(&m, 10_000, 1e-3).unwrap().is_empty());
    }

    #[test]
    fn scan_identity_covers_sigma() {
        let id = Matrix::identity(Field::Real, 2).unwrap();
        let m = sigma_map(&id).unwrap();
        let clusters = brute_force_fixed_scan(&m, 1000, 1e-6).unwrap();
        assert!(!clusters.is_empty());
        // every sample is fixed; clusters tile the circle
        let fs = fixed_set_on_sigma(&id, DEFAULT_TOL).unwrap();
        assert_eq!(fs.components.len(), 1);
        for c in &clusters {
            assert!(
                projective::dist_to_projectivized_subspace(c, &fs.components[0].basis).unwrap()
                    < 1e-9
            );
        }
    }

    #[test]
    fn orbit_attraction_to_dominant_direction() {
        // off-axis ratio contracts by 1/3 per step; 3^-20 ≈ 2.9e-10
        let d = Matrix::from_rows(&[&[3.0, 0.0], &[0.0, 1.0]]).unwrap();
        let m = sigma_map(&d).unwrap();
        let orbit =
            iterate_sigma_orbit(&m, &normalize_real(&[1.0, 1.0]).unwrap(), 20).unwrap();
        let e1 = normalize_real(&[1.0, 0.0]).unwrap();
        assert!(orbit.last().unwrap().proj_dist(&e1).unwrap() <= 1e-9);

        let id = sigma_map(&Matrix::identity(Field::Real, 2).unwrap()).unwrap();
        let start = normalize_real(&[0.2, 0.9]).unwrap();
        let orbit = iterate_sigma_orbit(&id, &start, 5).unwrap();
        assert!(orbit.iter().all(|p| p.approx_eq(&start, 1e-15)));
    }

    #[test]
    fn lifted_orbit_contracts_to_sigma() {
        // base -> 0, fiber -> [1,0] under diag(1/2, 1/3); oracle: closed-form
        // powers give base (2^-N, 3^-N) and fiber ratio (2/3)^N
        let d = Matrix::from_rows(&[&[0.5, 0.0], &[0.0, 1.0 / 3.0]]).unwrap();
        let lift = lift_map(MapSpec::Linear(d)).unwrap();
        let start = model::lift_point_real(&[1.0, 1.0], DEFAULT_TOL).unwrap();
        let orbit = iterate_lift_orbit(&lift, &start, 30, 1e-6).unwrap();
        let last = orbit.last().unwrap();
        assert!(linalg::norm(last.base()) < 1e-8);
        let e1 = normalize_real(&[1.0, 0.0]).unwrap();
        let expected_angle = libm::atan(libm::pow(2.0 / 3.0, 30.0));
        let got = last.fiber().proj_dist(&e1).unwrap();
        assert!((got - expected_angle).abs() < 1e-9, "angle {got} vs {expected_angle}");
        for p in &orbit {
            assert!(model::incidence_residual(p.base(), p.fiber()).unwrap() <= 1e-6);
        }
    }

    #[test]
    fn invariant_trace_examples() {
        let spec =
            MapSpec::Linear(Matrix::from_rows(&[&[0.5, 0.0], &[0.0, 3.0]]).unwrap());
        let scales = [1e-1, 1e-2, 1e-3, 1e-4];
        // stable axis
        let rep = invariant_subspace_trace(
            &spec,
            &[linalg::from_real(&[1.0, 0.0])],
            &scales,
            DEFAULT_TOL,
        )
        .unwrap();
        assert!(rep.max_deviation < 1e-12);
        assert!(rep.sigma_meeting_points[0].approx_eq(&normalize_real(&[1.0, 0.0]).unwrap(), 1e-12));
        // unstable axis
        let rep = invariant_subspace_trace(
            &spec,
            &[linalg::from_real(&[0.0, 1.0])],
            &scales,
            DEFAULT_TOL,
        )
        .unwrap();
        assert!(rep.sigma_meeting_points[0].approx_eq(&normalize_real(&[0.0, 1.0]).unwrap(), 1e-12));
        // eigenvector of an upper-triangular matrix: (1,1) for eigenvalue 3
        let spec =
            MapSpec::Linear(Matrix::from_rows(&[&[2.0, 1.0], &[0.0, 3.0]]).unwrap());
        let rep = invariant_subspace_trace(
            &spec,
            &[linalg::from_real(&[1.0, 1.0])],
            &scales,
            DEFAULT_TOL,
        )
        .unwrap();
        assert!(rep.max_deviation <= 1e-12);
        // a non-invariant direction is rejected
        let err = invariant_subspace_trace(
            &spec,
            &[linalg::from_real(&[0.0, 1.0])],
            &scales,
            DEFAULT_TOL,
        );
        assert!(matches!(err, Err(Error::NotInvariant { .. })));
    }
}
