//! Acceptance suite: one criterion per test, one PASS/FAIL line each.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::time::{Duration, Instant};

use blowup_core::dynamics::{self, SigmaMap};
use blowup_core::linalg::{self, Field, Matrix};
use blowup_core::map::{self, MapSpec, Monomial};
use blowup_core::projective::{self, ProjPoint};
use blowup_core::regularity::{self, SigmaCurve};
use blowup_core::topology;
use blowup_core::variant::{self, SequenceSchedule};
use blowup_core::{rng, DEFAULT_TOL};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn verdict(num: u32, name: &str, pass: bool) {
    println!("ACCEPTANCE {num} ({name}): {}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "acceptance criterion {num} ({name}) failed");
}

fn family_catalog() -> Vec<MapSpec> {
    let lin2 = MapSpec::Linear(Matrix::from_rows(&[&[2.0, 1.0], &[0.5, 3.0]]).unwrap());
    let lin3 = MapSpec::Linear(
        Matrix::from_rows(&[&[2.0, 0.0, 1.0], &[0.0, 3.0, 0.0], &[1.0, 0.0, 4.0]]).unwrap(),
    );
    let poly = MapSpec::Polynomial {
        field: Field::Real,
        n: 2,
        coords: vec![
            vec![
                Monomial { exponents: vec![1, 0], coeff: Complex64::new(2.0, 0.0) },
                Monomial { exponents: vec![2, 0], coeff: Complex64::new(0.3, 0.0) },
            ],
            vec![
                Monomial { exponents: vec![0, 1], coeff: Complex64::new(1.5, 0.0) },
                Monomial { exponents: vec![1, 1], coeff: Complex64::new(-0.2, 0.0) },
            ],
        ],
    };
    let rot = MapSpec::RotationScaling { lambda: 1.5, theta: 0.8 };
    let composite = MapSpec::Composite(vec![
        MapSpec::RotationScaling { lambda: 2.0, theta: 0.4 },
        MapSpec::Linear(Matrix::from_rows(&[&[1.0, 1.0], &[0.0, 2.0]]).unwrap()),
    ]);
    vec![lin2, lin3, MapSpec::PaperExampleC1, MapSpec::KinkPower { order: 2 }, poly, rot, composite]
}

#[test]
fn criterion_1_commutation() {
    let start = Instant::now();
    let mut pass = true;
    for (i, spec) in family_catalog().iter().enumerate() {
        let report = map::check_commutation(spec, 10_000, 1e-10, 1000 + i as u64).unwrap();
        if !report.pass() {
            eprintln!("  commutation residual {} for {spec:?}", report.max_residual());
            pass = false;
        }
    }
    pass &= start.elapsed() < Duration::from_secs(5);
    verdict(1, "commutation q∘ĥ = h∘q", pass);
}

#[test]
fn criterion_2_functoriality() {
    let start = Instant::now();
    let catalog = family_catalog();
    // only planar specs compose with planar specs; build 20 dimension-matched pairs
    let planar: Vec<&MapSpec> = catalog.iter().filter(|s| s.n() == 2).collect();
    let mut pairs = Vec::new();
    'outer: for g in &planar {
        for h in &planar {
            pairs.push(((*g).clone(), (*h).clone()));
            if pairs.len() == 20 {
                break 'outer;
            }
        }
    }
    assert_eq!(pairs.len(), 20);
    let mut pass = true;
    for (i, (g, h)) in pairs.iter().enumerate() {
        let report = map::check_functoriality(g, h, 1000, 1e-9, 2000 + i as u64).unwrap();
        if !report.pass() {
            eprintln!("  functoriality residual {} for {g:?} ∘ {h:?}", report.max_residual());
            pass = false;
        }
    }
    pass &= start.elapsed() < Duration::from_secs(10);
    verdict(2, "functoriality of lifting", pass);
}

/// Random real matrix with bounded condition number and well-separated
/// spectrum. The separation rejection keeps the finite-resolution scan able
/// to distinguish components; the condition bound alone does not.
fn random_well_conditioned(r: &mut ChaCha8Rng, n: usize) -> Matrix {
    loop {
        let data: Vec<Complex64> =
            (0..n * n).map(|_| Complex64::new(r.gen_range(-1.0..1.0), 0.0)).collect();
        let m = Matrix::new(Field::Real, n, data).unwrap();
        let sigma_min = linalg::smallest_singular_value(&m);
        if sigma_min <= 0.0 || m.frobenius_norm() / sigma_min > 1e3 {
            continue;
        }
        let eigs = linalg::eigenvalues(&m);
        let mut ok = true;
        let moduli: Vec<f64> = eigs.iter().map(|l| l.norm()).collect();
        let (lo, hi) = moduli
            .iter()
            .fold((f64::INFINITY, 0.0f64), |(lo, hi), &m| (lo.min(m), hi.max(m)));
        // bounded modulus spread keeps residual bands narrow enough for the
        // scan's grid to resolve
        if hi > 2.5 * lo {
            continue;
        }
        for i in 0..eigs.len() {
            for j in 0..i {
                if (eigs[i] - eigs[j]).norm() < 0.5 * eigs[i].norm().max(eigs[j].norm()) {
                    ok = false;
                }
            }
        }
        if !ok {
            continue;
        }
        // eigendirections must be resolvable by the scan's cluster radius
        let comps = match linalg::eigen_decompose(&m, DEFAULT_TOL) {
            Ok(c) => c,
            Err(_) => continue,
        };
        let dirs: Vec<ProjPoint> = comps
            .iter()
            .filter(|c| c.basis.len() == 1)
            .map(|c| projective::normalize(Field::Real, &c.basis[0]).unwrap())
            .collect();
        let min_sep = if n == 2 { 0.05 } else { 0.8 };
        for i in 0..dirs.len() {
            for j in 0..i {
                if dirs[i].proj_dist(&dirs[j]).unwrap() < min_sep {
                    ok = false;
                }
            }
        }
        if ok {
            return m;
        }
    }
}

#[test]
fn criterion_3_fixed_set_oracle() {
    let start = Instant::now();
    let mut pass = true;
    let mut r = rng::seeded(31);
    for case in 0..100usize {
        let n = if case < 50 { 2 } else { 3 };
        let m = random_well_conditioned(&mut r, n);
        let fix = dynamics::fixed_set_on_sigma(&m, DEFAULT_TOL).unwrap();
        let sigma = dynamics::sigma_map(&m).unwrap();
        let clusters = dynamics::brute_force_fixed_scan(&sigma, 10_000, 1e-3).unwrap();
        if clusters.len() != fix.components.len() {
            eprintln!(
                "  case {case}: scan found {} clusters, eigen route {} components",
                clusters.len(),
                fix.components.len()
            );
            pass = false;
            continue;
        }
        for c in &clusters {
            let near = fix.components.iter().any(|comp| {
                matches!(
                    projective::dist_to_projectivized_subspace(c, &comp.basis),
                    Ok(d) if d <= 1e-3
                )
            });
            if !near {
                eprintln!("  case {case}: scan cluster not within 1e-3 of any eigenspace");
                pass = false;
            }
        }
    }
    // complex fixed sets are never empty
    for seed in 0..20u64 {
        let mut rc = rng::seeded(7000 + seed);
        let n = 2 + (seed as usize) % 2;
        let m = loop {
            let data: Vec<Complex64> = (0..n * n)
                .map(|_| Complex64::new(rc.gen_range(-1.0..1.0), rc.gen_range(-1.0..1.0)))
                .collect();
            let m = Matrix::new(Field::Complex, n, data).unwrap();
            if linalg::is_invertible(&m, 1e-3) {
                break m;
            }
        };
        if dynamics::fixed_set_on_sigma(&m, DEFAULT_TOL).unwrap().components.is_empty() {
            eprintln!("  empty complex fixed set at seed {seed}");
            pass = false;
        }
    }
    pass &= start.elapsed() < Duration::from_secs(60);
    verdict(3, "fixed-set oracle equivalence", pass);
}

#[test]
fn criterion_4_regularity_loss() {
    let start = Instant::now();
    let mut pass = true;
    let lift = map::lift_map(MapSpec::PaperExampleC1).unwrap();
    for m in [0.5, -0.5, 1.0, -1.0, 2.0, -2.0, 4.0, -4.0] {
        let curve = SigmaCurve::new(m).unwrap();
        // closed form 2/|m| holds in the chart about [0, 1]
        let report = regularity::one_sided_derivatives(
            &lift,
            &curve,
            Some(1),
            &regularity::default_steps(),
        )
        .unwrap();
        if (report.jump[0] - 2.0 / m.abs()).abs() > 1e-3 {
            eprintln!("  m = {m}: jump {} vs {}", report.jump[0], 2.0 / m.abs());
            pass = false;
        }
    }
    let linear = map::lift_map(MapSpec::Linear(
        Matrix::from_rows(&[&[2.0, 1.0], &[0.0, 3.0]]).unwrap(),
    ))
    .unwrap();
    for m in [0.5, 1.0, -2.0] {
        let curve = SigmaCurve::new(m).unwrap();
        let report =
            regularity::one_sided_derivatives(&linear, &curve, None, &regularity::default_steps())
                .unwrap();
        if report.jump.iter().any(|&j| j > 1e-6) {
            eprintln!("  linear map shows jump {:?} at slope {m}", report.jump);
            pass = false;
        }
    }
    pass &= start.elapsed() < Duration::from_secs(5);
    verdict(4, "regularity loss 2/|m|", pass);
}

#[test]
fn criterion_5_attraction() {
    let d = Matrix::from_rows(&[&[3.0, 0.0], &[0.0, 1.0]]).unwrap();
    let sigma: SigmaMap = dynamics::sigma_map(&d).unwrap();
    let target = projective::normalize_real(&[1.0, 0.0]).unwrap();
    let mut r = rng::seeded(55);
    let mut pass = true;
    for case in 0..50 {
        // random start with first coordinate bounded away from zero
        let (a, b) = loop {
            let a: f64 = r.gen_range(-1.0..1.0);
            let b: f64 = r.gen_range(-1.0..1.0);
            if a.abs() >= 0.1 * (a * a + b * b).sqrt() && a * a + b * b > 1e-4 {
                break (a, b);
            }
        };
        let start = projective::normalize_real(&[a, b]).unwrap();
        let orbit = dynamics::iterate_sigma_orbit(&sigma, &start, 20).unwrap();
        let final_dist = orbit.last().unwrap().proj_dist(&target).unwrap();
        if final_dist > 1e-8 {
            eprintln!("  case {case}: distance {final_dist} after 20 iterations");
            pass = false;
        }
        // contraction rate ~ |λ2/λ1| = 1/3, checked while above the noise floor
        for k in 2..15 {
            let dk = orbit[k].proj_dist(&target).unwrap();
            let dk1 = orbit[k + 1].proj_dist(&target).unwrap();
            if dk < 1e-12 {
                break;
            }
            let rate = dk1 / dk;
            if !(rate >= 1.0 / 6.0 && rate <= 2.0 / 3.0) {
                eprintln!("  case {case}: rate {rate} at step {k}");
                pass = false;
                break;
            }
        }
    }
    verdict(5, "attraction on Σ for diag(3,1)", pass);
}

#[test]
fn criterion_6_variant_contrast() {
    use core::f64::consts::FRAC_PI_6;
    let h0 = MapSpec::RotationScaling { lambda: 2.0, theta: FRAC_PI_6 };
    let classical =
        dynamics::fixed_set_on_sigma(&h0.derivative_at_origin().unwrap(), DEFAULT_TOL).unwrap();
    let h1 = MapSpec::Linear(Matrix::from_rows(&[&[2.0, 0.0], &[0.0, 2.0]]).unwrap());
    let phi = variant::spiral_conjugacy(2.0, FRAC_PI_6).unwrap();
    let (vb, report) = variant::variant_blowup(h0, h1, phi, 10_000, 1e-9, 66).unwrap();
    let fix = vb.fixed_set(DEFAULT_TOL).unwrap();
    let pass = classical.components.is_empty()
        && report.pass()
        && fix.components.len() == 1
        && fix.components[0].proj_dim() == 1;
    if !report.pass() {
        eprintln!("  diagram residual {}", report.max_residual());
    }
    verdict(6, "variant blowup contrast", pass);
}

#[test]
fn criterion_7_allocation_predictor() {
    let mut r = rng::seeded(77);
    let mut pass = true;
    for case in 0..50 {
        let alloc = variant::random_allocation(&mut r);
        if !variant::check_allocation(&alloc, DEFAULT_TOL).unwrap() {
            eprintln!("  case {case}: mismatch for {alloc:?}");
            pass = false;
        }
    }
    verdict(7, "allocation predictor", pass);
}

#[test]
fn criterion_8_no_lift_witness() {
    use core::f64::consts::FRAC_PI_2;
    let x = projective::normalize_real(&[1.0, 0.0]).unwrap();
    let y = projective::normalize_real(&[0.0, 1.0]).unwrap();
    let report = variant::no_lift_witness(&x, &y, &SequenceSchedule::geometric(20)).unwrap();
    let pass = report.separation >= FRAC_PI_2 - 1e-6
        && report.blowdown_limit_norm <= 2f64.powi(-16)
        && report.knot_max_error <= 1e-12
        && report.roundtrip_max_error <= 1e-9
        && report.verdict == "no_continuous_lift";
    if !pass {
        eprintln!(
            "  separation {} norm {} knots {} roundtrip {}",
            report.separation,
            report.blowdown_limit_norm,
            report.knot_max_error,
            report.roundtrip_max_error
        );
    }
    verdict(8, "no-lift witness", pass);
}

/// Euler characteristic of the minimal 6-vertex triangulation of RP²,
/// counted from its explicit face list — independent of the formula under
/// test.
fn rp2_simplicial_euler() -> i64 {
    // antipodal quotient of the icosahedron: 10 triangular faces on
    // vertices {0..5}
    let faces: [[usize; 3]; 10] = [
        [0, 1, 2],
        [0, 2, 3],
        [0, 3, 4],
        [0, 4, 5],
        [0, 5, 1],
        [1, 2, 4],
        [2, 3, 5],
        [3, 4, 1],
        [4, 5, 2],
        [5, 1, 3],
    ];
    let mut vertices = std::collections::BTreeSet::new();
    let mut edges = std::collections::BTreeSet::new();
    for f in &faces {
        for &v in f {
            vertices.insert(v);
        }
        for (a, b) in [(f[0], f[1]), (f[1], f[2]), (f[0], f[2])] {
            edges.insert((a.min(b), a.max(b)));
        }
    }
    vertices.len() as i64 - edges.len() as i64 + faces.len() as i64
}

#[test]
fn criterion_9_euler_bookkeeping() {
    // real: S² blown up at a point is S² # RP² = RP²; oracle = simplicial
    // count on the 6-vertex triangulation
    let real = topology::euler_blowup(2, 2, Field::Real).unwrap();
    let real_oracle = rp2_simplicial_euler();

    // complex: CP² blown up at a point is CP² # conj-CP²; oracle = Betti sum
    // b = (1, 0, 2, 0, 1) — H₂ gains the class of the exceptional sphere
    let betti = [1i64, 0, 2, 0, 1];
    let complex_oracle: i64 =
        betti.iter().enumerate().map(|(i, b)| if i % 2 == 0 { *b } else { -*b }).sum();
    let complex = topology::euler_blowup(3, 2, Field::Complex).unwrap();

    let pass = real == 1 && real == real_oracle && complex == 4 && complex == complex_oracle;
    verdict(9, "Euler bookkeeping", pass);
}
