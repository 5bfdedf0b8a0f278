//! Experiment driver for the blowup dynamics library.
//!
//! Every subcommand prints a JSON report to stdout with a versioned schema,
//! the explicit seed, and an echo of the effective configuration. Exit codes:
//! 0 on pass, 2 when a checked property fails (with a machine-readable
//! `failures` array), 1 on usage or input errors.

mod jsonio;
mod svg;

use std::fs;
use std::path::PathBuf;

use blowup_core::dynamics;
use blowup_core::linalg::Field;
use blowup_core::map::{self, MapSpec};
use blowup_core::model;
use blowup_core::projective;
use blowup_core::regularity::{self, SigmaCurve};
use blowup_core::topology;
use blowup_core::variant::{self, SequenceSchedule};
use blowup_core::DEFAULT_TOL;
use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "blowup", version, about = "Blowup dynamics experiments", disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify commutation q∘ĥ = h∘q and functoriality of lifting
    LiftCheck(LiftCheckArgs),
    /// Fixed set of the lift on Σ, with a brute-force scan oracle
    FixedSet(FixedSetArgs),
    /// Iterate lifted orbits; write CSV and optionally an SVG portrait
    Orbit(OrbitArgs),
    /// One-sided derivative scan of the lifted chart coordinate across Σ
    Regularity(RegularityArgs),
    /// Spiral-conjugacy variant blowup and its fixed-set contrast
    VariantDemo(VariantDemoArgs),
    /// Constructive witness that a homeomorphism need not lift
    NoLiftDemo(NoLiftDemoArgs),
    /// Euler characteristic bookkeeping for point blowups
    Euler(EulerArgs),
}

fn default_map() -> Option<String> {
    None
}

#[derive(Args, Serialize, Deserialize)]
struct LiftCheckArgs {
    /// Map spec as JSON (see README for the family catalog)
    #[arg(long)]
    #[serde(default = "default_map")]
    map: Option<String>,
    /// Shorthand: real matrix as nested JSON array (family "linear")
    #[arg(long)]
    #[serde(default = "default_map")]
    matrix: Option<String>,
    /// Optional outer map g for the functoriality check of g ∘ h
    #[arg(long)]
    #[serde(default = "default_map")]
    with: Option<String>,
    #[arg(long, default_value_t = 10_000)]
    #[serde(default = "d_samples_10k")]
    samples: usize,
    #[arg(long, default_value_t = 1_000)]
    #[serde(default = "d_samples_1k")]
    functoriality_samples: usize,
    #[arg(long, default_value_t = 1e-10)]
    #[serde(default = "d_tol_1em10")]
    tol: f64,
    #[arg(long, default_value_t = 1e-9)]
    #[serde(default = "d_tol_1em9")]
    functoriality_tol: f64,
    #[arg(long, default_value_t = 0)]
    #[serde(default)]
    seed: u64,
    /// JSON file whose fields override these flags
    #[arg(long)]
    #[serde(skip_serializing, default)]
    config: Option<PathBuf>,
}

#[derive(Args, Serialize, Deserialize)]
struct FixedSetArgs {
    #[arg(long)]
    #[serde(default = "default_map")]
    map: Option<String>,
    #[arg(long)]
    #[serde(default = "default_map")]
    matrix: Option<String>,
    /// Field tag for --matrix: R or C
    #[arg(long, default_value = "R")]
    #[serde(default = "d_field_r")]
    field: String,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    #[serde(default = "d_tol_1em9")]
    tol: f64,
    /// Brute-force scan sample count (0 disables the oracle)
    #[arg(long, default_value_t = 10_000)]
    #[serde(default = "d_samples_10k")]
    scan_resolution: usize,
    #[arg(long, default_value_t = 0)]
    #[serde(default)]
    seed: u64,
    #[arg(long)]
    #[serde(skip_serializing, default)]
    config: Option<PathBuf>,
}

#[derive(Args, Serialize, Deserialize)]
struct OrbitArgs {
    #[arg(long)]
    #[serde(default = "default_map")]
    map: Option<String>,
    #[arg(long)]
    #[serde(default = "default_map")]
    matrix: Option<String>,
    /// Start point as a JSON vector; repeat for several orbits
    #[arg(long, required = true)]
    #[serde(default)]
    start: Vec<String>,
    #[arg(long, default_value_t = 20)]
    #[serde(default = "d_steps_20")]
    steps: usize,
    /// CSV output path (stdout section of the report if omitted).
    /// Columns: orbit,step,x0..x{n-1},y0..y{n-1} (re and im for complex)
    #[arg(long)]
    #[serde(default = "default_map", skip_serializing_if = "Option::is_none")]
    csv: Option<String>,
    /// Optional SVG phase portrait (real planar maps only)
    #[arg(long)]
    #[serde(default = "default_map", skip_serializing_if = "Option::is_none")]
    svg: Option<String>,
    #[arg(long, default_value_t = 0)]
    #[serde(default)]
    seed: u64,
    #[arg(long)]
    #[serde(skip_serializing, default)]
    config: Option<PathBuf>,
}

#[derive(Args, Serialize, Deserialize)]
struct RegularityArgs {
    /// Slope m of the Σ-transversal curve t ↦ (t, m·t)
    #[arg(long, default_value_t = 1.0)]
    #[serde(default = "d_one")]
    m: f64,
    /// Map spec JSON; defaults to the C¹ example h(x,y) = (x + x|x|, y)
    #[arg(long)]
    #[serde(default = "default_map")]
    map: Option<String>,
    /// Chart index; defaults to 1 (the chart about [0,1], where the closed
    /// form 2/|m| holds) for the kink families, auto otherwise
    #[arg(long)]
    #[serde(default)]
    chart: Option<usize>,
    #[arg(long, default_value_t = 0)]
    #[serde(default)]
    seed: u64,
    #[arg(long)]
    #[serde(skip_serializing, default)]
    config: Option<PathBuf>,
}

#[derive(Args, Serialize, Deserialize)]
struct VariantDemoArgs {
    #[arg(long, default_value_t = 2.0)]
    #[serde(default = "d_two")]
    lambda: f64,
    /// Rotation angle in radians; default π/6
    #[arg(long, default_value_t = core::f64::consts::FRAC_PI_6)]
    #[serde(default = "d_pi_6")]
    theta: f64,
    #[arg(long, default_value_t = 10_000)]
    #[serde(default = "d_samples_10k")]
    samples: usize,
    #[arg(long, default_value_t = 1e-9)]
    #[serde(default = "d_tol_1em9")]
    tol: f64,
    #[arg(long, default_value_t = 0)]
    #[serde(default)]
    seed: u64,
    #[arg(long)]
    #[serde(skip_serializing, default)]
    config: Option<PathBuf>,
}

#[derive(Args, Serialize, Deserialize)]
struct NoLiftDemoArgs {
    /// First Σ target as a JSON vector, e.g. "[1,0]"
    #[arg(long, default_value = "[1,0]")]
    #[serde(default = "d_e1")]
    x: String,
    /// Second Σ target as a JSON vector, e.g. "[0,1]"
    #[arg(long, default_value = "[0,1]")]
    #[serde(default = "d_e2")]
    y: String,
    /// Number of radii 2^{-i}
    #[arg(long, default_value_t = 20)]
    #[serde(default = "d_steps_20")]
    count: usize,
    #[arg(long, default_value_t = 0)]
    #[serde(default)]
    seed: u64,
    #[arg(long)]
    #[serde(skip_serializing, default)]
    config: Option<PathBuf>,
}

#[derive(Args, Serialize, Deserialize)]
struct EulerArgs {
    /// Field tag: R or C
    #[arg(long, default_value = "R")]
    #[serde(default = "d_field_r")]
    field: String,
    #[arg(long, default_value_t = 2)]
    #[serde(default = "d_two_usize")]
    n: usize,
    /// Euler characteristic before the blowup
    #[arg(long, default_value_t = 2)]
    #[serde(default = "d_two_i64")]
    chi: i64,
    #[arg(long, default_value_t = 0)]
    #[serde(default)]
    seed: u64,
    #[arg(long)]
    #[serde(skip_serializing, default)]
    config: Option<PathBuf>,
}

fn d_samples_10k() -> usize {
    10_000
}
fn d_samples_1k() -> usize {
    1_000
}
fn d_steps_20() -> usize {
    20
}
fn d_tol_1em10() -> f64 {
    1e-10
}
fn d_tol_1em9() -> f64 {
    1e-9
}
fn d_one() -> f64 {
    1.0
}
fn d_two() -> f64 {
    2.0
}
fn d_pi_6() -> f64 {
    core::f64::consts::FRAC_PI_6
}
fn d_field_r() -> String {
    "R".into()
}
fn d_e1() -> String {
    "[1,0]".into()
}
fn d_e2() -> String {
    "[0,1]".into()
}
fn d_two_usize() -> usize {
    2
}
fn d_two_i64() -> i64 {
    2
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match cli.command {
        Command::LiftCheck(a) => with_config(a, cmd_lift_check),
        Command::FixedSet(a) => with_config(a, cmd_fixed_set),
        Command::Orbit(a) => with_config(a, cmd_orbit),
        Command::Regularity(a) => with_config(a, cmd_regularity),
        Command::VariantDemo(a) => with_config(a, cmd_variant_demo),
        Command::NoLiftDemo(a) => with_config(a, cmd_no_lift_demo),
        Command::Euler(a) => with_config(a, cmd_euler),
    };
    match outcome {
        Ok((name, seed, config, report, failures)) => {
            let envelope = json!({
                "schema": 1,
                "version": env!("CARGO_PKG_VERSION"),
                "command": name,
                "seed": seed,
                "config": config,
                "report": report,
                "failures": failures,
            });
            println!("{}", serde_json::to_string_pretty(&envelope).unwrap());
            if failures_nonempty(&envelope) {
                2
            } else {
                0
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            1
        }
    }
}

fn failures_nonempty(envelope: &Value) -> bool {
    envelope["failures"].as_array().map(|a| !a.is_empty()).unwrap_or(false)
}

type Outcome = Result<(&'static str, u64, Value, Value, Vec<String>), String>;

trait CommandArgs: Serialize + for<'de> Deserialize<'de> {
    fn config_path(&self) -> Option<&PathBuf>;
}

macro_rules! impl_command_args {
    ($($t:ty),*) => {$(
        impl CommandArgs for $t {
            fn config_path(&self) -> Option<&PathBuf> {
                self.config.as_ref()
            }
        }
    )*};
}
impl_command_args!(
    LiftCheckArgs,
    FixedSetArgs,
    OrbitArgs,
    RegularityArgs,
    VariantDemoArgs,
    NoLiftDemoArgs,
    EulerArgs
);

/// Applies `--config file.json` (its fields override the flags), then runs.
fn with_config<A: CommandArgs>(args: A, f: fn(A) -> Outcome) -> Outcome {
    let args = match args.config_path() {
        None => args,
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
            let overrides: Value = serde_json::from_str(&text)
                .map_err(|e| format!("config {} is not valid JSON: {e}", path.display()))?;
            let mut base = serde_json::to_value(&args).map_err(|e| e.to_string())?;
            let Value::Object(ov) = overrides else {
                return Err(format!("config {} must be a JSON object", path.display()));
            };
            let Value::Object(ref mut bv) = base else { unreachable!() };
            for (k, v) in ov {
                bv.insert(k, v);
            }
            serde_json::from_value(base).map_err(|e| format!("bad config field: {e}"))?
        }
    };
    f(args)
}

fn resolve_map(map: &Option<String>, matrix: &Option<String>, field: Field) -> Result<MapSpec, String> {
    match (map, matrix) {
        (Some(m), _) => {
            let v: Value = serde_json::from_str(m).map_err(|e| format!("--map is not JSON: {e}"))?;
            jsonio::map_spec_from_json(&v)
        }
        (None, Some(m)) => {
            let v: Value =
                serde_json::from_str(m).map_err(|e| format!("--matrix is not JSON: {e}"))?;
            let spec = MapSpec::Linear(jsonio::matrix_from_json(&v, field)?);
            spec.validate().map_err(|e| e.to_string())?;
            Ok(spec)
        }
        (None, None) => Err("one of --map or --matrix is required".into()),
    }
}

fn cmd_lift_check(a: LiftCheckArgs) -> Outcome {
    let spec = resolve_map(&a.map, &a.matrix, Field::Real)?;
    let commutation =
        map::check_commutation(&spec, a.samples, a.tol, a.seed).map_err(|e| e.to_string())?;
    let outer = match &a.with {
        Some(w) => {
            let v: Value = serde_json::from_str(w).map_err(|e| format!("--with is not JSON: {e}"))?;
            jsonio::map_spec_from_json(&v)?
        }
        None => spec.clone(),
    };
    let functoriality = map::check_functoriality(
        &outer,
        &spec,
        a.functoriality_samples,
        a.functoriality_tol,
        a.seed.wrapping_add(1),
    )
    .map_err(|e| e.to_string())?;
    let mut failures = Vec::new();
    if !commutation.pass() {
        failures.push(format!(
            "commutation residual {} exceeds {}",
            commutation.max_residual(),
            a.tol
        ));
    }
    if !functoriality.pass() {
        failures.push(format!(
            "functoriality residual {} exceeds {}",
            functoriality.max_residual(),
            a.functoriality_tol
        ));
    }
    let report = json!({
        "map": jsonio::map_spec_to_json(&spec),
        "outer": jsonio::map_spec_to_json(&outer),
        "commutation": jsonio::residual_report_to_json(&commutation),
        "functoriality": jsonio::residual_report_to_json(&functoriality),
    });
    let config = serde_json::to_value(&a).unwrap();
    Ok(("lift-check", a.seed, config, report, failures))
}

fn scan_supported(field: Field, n: usize) -> bool {
    matches!((field, n), (Field::Real, 2) | (Field::Real, 3) | (Field::Complex, 2))
}

fn cmd_fixed_set(a: FixedSetArgs) -> Outcome {
    let field = jsonio::field_from_str(&a.field)?;
    let spec = resolve_map(&a.map, &a.matrix, field)?;
    let d0 = spec.derivative_at_origin().map_err(|e| e.to_string())?;
    let fixed = dynamics::fixed_set_on_sigma(&d0, a.tol).map_err(|e| e.to_string())?;
    let mut failures = Vec::new();
    let oracle = if a.scan_resolution > 0 && scan_supported(d0.field(), d0.dim()) {
        let sigma = dynamics::sigma_map(&d0).map_err(|e| e.to_string())?;
        let clusters = dynamics::brute_force_fixed_scan(&sigma, a.scan_resolution, 1e-3)
            .map_err(|e| e.to_string())?;
        let mut agrees = clusters.len() == fixed.components.len();
        for c in &clusters {
            let near = fixed.components.iter().any(|comp| {
                matches!(
                    projective::dist_to_projectivized_subspace(c, &comp.basis),
                    Ok(d) if d <= 1e-3
                )
            });
            agrees &= near;
        }
        if !agrees {
            failures.push(format!(
                "brute-force scan ({} clusters) disagrees with eigenspace route ({} components)",
                clusters.len(),
                fixed.components.len()
            ));
        }
        json!({
            "resolution": a.scan_resolution,
            "clusters": clusters.iter().map(jsonio::proj_point_to_json).collect::<Vec<_>>(),
            "agrees": agrees,
        })
    } else {
        Value::Null
    };
    let report = json!({
        "map": jsonio::map_spec_to_json(&spec),
        "derivative_at_origin": jsonio::matrix_to_json(&d0),
        "fixed_set": jsonio::fixed_set_to_json(&fixed),
        "oracle": oracle,
    });
    let config = serde_json::to_value(&a).unwrap();
    Ok(("fixed-set", a.seed, config, report, failures))
}

fn cmd_orbit(a: OrbitArgs) -> Outcome {
    let spec = resolve_map(&a.map, &a.matrix, Field::Real)?;
    let lift = map::lift_map(spec.clone()).map_err(|e| e.to_string())?;
    let field = lift.field();
    let n = lift.n();

    let mut orbits = Vec::new();
    for s in &a.start {
        let v: Value = serde_json::from_str(s).map_err(|e| format!("--start is not JSON: {e}"))?;
        let x = jsonio::vector_from_json(&v)?;
        if x.len() != n {
            return Err(format!("start point has dimension {}, map has {n}", x.len()));
        }
        let p = model::lift_point(field, &x, blowup_core::SIGMA_CUTOFF)
            .map_err(|e| e.to_string())?;
        let orbit =
            dynamics::iterate_lift_orbit(&lift, &p, a.steps, 1e-6).map_err(|e| e.to_string())?;
        orbits.push(orbit);
    }

    let mut csv = String::new();
    {
        use std::fmt::Write as _;
        let mut header = String::from("orbit,step");
        for i in 0..n {
            match field {
                Field::Real => {
                    let _ = write!(header, ",x{i}");
                }
                Field::Complex => {
                    let _ = write!(header, ",x{i}_re,x{i}_im");
                }
            }
        }
        for i in 0..n {
            match field {
                Field::Real => {
                    let _ = write!(header, ",y{i}");
                }
                Field::Complex => {
                    let _ = write!(header, ",y{i}_re,y{i}_im");
                }
            }
        }
        csv.push_str(&header);
        csv.push('\n');
        for (oi, orbit) in orbits.iter().enumerate() {
            for (step, p) in orbit.iter().enumerate() {
                let _ = write!(csv, "{oi},{step}");
                for z in p.base().iter().chain(p.fiber().homog()) {
                    match field {
                        Field::Real => {
                            let _ = write!(csv, ",{}", z.re);
                        }
                        Field::Complex => {
                            let _ = write!(csv, ",{},{}", z.re, z.im);
                        }
                    }
                }
                csv.push('\n');
            }
        }
    }
    let csv_value = match &a.csv {
        Some(path) => {
            fs::write(path, &csv).map_err(|e| format!("cannot write {path}: {e}"))?;
            json!({ "path": path })
        }
        None => json!({ "inline": csv }),
    };

    let svg_value = match &a.svg {
        Some(path) => {
            if field != Field::Real || n != 2 {
                return Err("SVG portraits are drawn for real planar maps only".into());
            }
            let fixed = dynamics::fixed_set_on_sigma(lift.derivative(), DEFAULT_TOL)
                .map_err(|e| e.to_string())?;
            let rendered = svg::render(&orbits, &fixed.components);
            fs::write(path, rendered.as_bytes()).map_err(|e| format!("cannot write {path}: {e}"))?;
            json!({ "path": path })
        }
        None => Value::Null,
    };

    let report = json!({
        "map": jsonio::map_spec_to_json(&spec),
        "steps": a.steps,
        "orbits": orbits.iter().map(|o| o.iter()
            .map(jsonio::blowup_point_to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "csv": csv_value,
        "svg": svg_value,
    });
    let config = serde_json::to_value(&a).unwrap();
    Ok(("orbit", a.seed, config, report, Vec::new()))
}

fn cmd_regularity(a: RegularityArgs) -> Outcome {
    let spec = match &a.map {
        Some(m) => {
            let v: Value = serde_json::from_str(m).map_err(|e| format!("--map is not JSON: {e}"))?;
            jsonio::map_spec_from_json(&v)?
        }
        None => MapSpec::PaperExampleC1,
    };
    let lift = map::lift_map(spec.clone()).map_err(|e| e.to_string())?;
    let curve = SigmaCurve::new(a.m).map_err(|e| e.to_string())?;
    // the closed-form jump 2/|m| is chart-dependent; pin [0,1] for the kinks
    let kink_family = matches!(spec, MapSpec::PaperExampleC1 | MapSpec::KinkPower { .. });
    let chart = a.chart.or(if kink_family { Some(1) } else { None });
    let report_data =
        regularity::one_sided_derivatives(&lift, &curve, chart, &regularity::default_steps())
            .map_err(|e| e.to_string())?;

    let expected = match &spec {
        MapSpec::PaperExampleC1 | MapSpec::KinkPower { order: 1 } => {
            Some((2.0 / a.m.abs(), 1e-3))
        }
        MapSpec::KinkPower { .. } | MapSpec::Linear(_) => Some((0.0, 1e-6)),
        _ => None,
    };
    let mut failures = Vec::new();
    if let Some((want, tol)) = expected {
        let got = report_data.jump[0];
        if (got - want).abs() > tol {
            failures.push(format!("slope jump {got} differs from expected {want} by more than {tol}"));
        }
    }
    let report = json!({
        "map": jsonio::map_spec_to_json(&spec),
        "m": a.m,
        "chart": report_data.chart,
        "left": report_data.left,
        "right": report_data.right,
        "jump": report_data.jump,
        "noise": report_data.noise,
        "kink": report_data.kink,
        "expected_jump": expected.map(|(w, _)| w),
    });
    let config = serde_json::to_value(&a).unwrap();
    Ok(("regularity", a.seed, config, report, failures))
}

fn cmd_variant_demo(a: VariantDemoArgs) -> Outcome {
    let h0 = MapSpec::RotationScaling { lambda: a.lambda, theta: a.theta };
    let classical = dynamics::fixed_set_on_sigma(
        &h0.derivative_at_origin().map_err(|e| e.to_string())?,
        DEFAULT_TOL,
    )
    .map_err(|e| e.to_string())?;
    let h1 = MapSpec::Linear(
        blowup_core::Matrix::diagonal(
            Field::Real,
            &[num_complex::Complex64::new(a.lambda, 0.0), num_complex::Complex64::new(a.lambda, 0.0)],
        )
        .map_err(|e| e.to_string())?,
    );
    let phi = variant::spiral_conjugacy(a.lambda, a.theta).map_err(|e| e.to_string())?;

    let mut failures = Vec::new();
    let (variant_report, fixed_variant) =
        match variant::variant_blowup(h0.clone(), h1.clone(), phi, a.samples, a.tol, a.seed) {
            Ok((vb, report)) => {
                if !report.pass() {
                    failures.push(format!(
                        "variant diagram residual {} exceeds {}",
                        report.max_residual(),
                        a.tol
                    ));
                }
                let fixed = vb.fixed_set(DEFAULT_TOL).map_err(|e| e.to_string())?;
                (jsonio::residual_report_to_json(&report), jsonio::fixed_set_to_json(&fixed))
            }
            Err(e) => {
                failures.push(format!("variant construction failed: {e}"));
                (Value::Null, Value::Null)
            }
        };

    let report = json!({
        "classical_map": jsonio::map_spec_to_json(&h0),
        "conjugate_map": jsonio::map_spec_to_json(&h1),
        "classical_fixed_set": jsonio::fixed_set_to_json(&classical),
        "variant_fixed_set": fixed_variant,
        "diagram": variant_report,
        "contrast": {
            "classical_components": classical.components.len(),
            "variant_covers_sigma": fixed_variant["components"]
                .as_array()
                .map(|c| c.len() == 1 && c[0]["proj_dim"] == json!(1))
                .unwrap_or(false),
        },
    });
    let config = serde_json::to_value(&a).unwrap();
    Ok(("variant-demo", a.seed, config, report, failures))
}

fn cmd_no_lift_demo(a: NoLiftDemoArgs) -> Outcome {
    let parse_target = |s: &str, name: &str| -> Result<blowup_core::ProjPoint, String> {
        let v: Value = serde_json::from_str(s).map_err(|e| format!("--{name} is not JSON: {e}"))?;
        let vec = jsonio::vector_from_json(&v)?;
        projective::normalize(Field::Real, &vec).map_err(|e| e.to_string())
    };
    let x = parse_target(&a.x, "x")?;
    let y = parse_target(&a.y, "y")?;
    let schedule = SequenceSchedule::geometric(a.count);
    let witness = variant::no_lift_witness(&x, &y, &schedule).map_err(|e| e.to_string())?;
    let expected = x.proj_dist(&y).map_err(|e| e.to_string())?;
    let mut failures = Vec::new();
    if !witness.pass(expected, 1e-6) {
        failures.push(format!(
            "witness failed: separation {} (expected ≥ {}), knots {}, roundtrip {}",
            witness.separation, expected, witness.knot_max_error, witness.roundtrip_max_error
        ));
    }
    let report = json!({
        "cluster_points": witness.cluster_points.iter()
            .map(jsonio::proj_point_to_json).collect::<Vec<_>>(),
        "separation": witness.separation,
        "blowdown_limit_norm": witness.blowdown_limit_norm,
        "knot_max_error": witness.knot_max_error,
        "roundtrip_max_error": witness.roundtrip_max_error,
        "verdict": witness.verdict,
        "radii": schedule.radii,
    });
    let config = serde_json::to_value(&a).unwrap();
    Ok(("no-lift-demo", a.seed, config, report, failures))
}

fn cmd_euler(a: EulerArgs) -> Outcome {
    let field = jsonio::field_from_str(&a.field)?;
    let after = topology::euler_blowup(a.chi, a.n, field).map_err(|e| e.to_string())?;
    let mut report = json!({
        "field": jsonio::field_to_str(field),
        "n": a.n,
        "chi_before": a.chi,
        "chi_after": after,
        "summand": topology::summand_label(field, a.n),
        "sigma_dim": a.n - 1,
    });
    match field {
        Field::Real => {
            if a.n == 2 {
                let s = topology::surface_blowup_summary();
                report["surface"] = json!({
                    "sigma": s.sigma,
                    "model_bundle": s.model_bundle,
                    "orientable_model": s.orientable_model,
                    "global_effect": s.global_effect,
                });
            }
        }
        Field::Complex => {
            report["chern"] = Value::Array(
                topology::chern_constants(a.n)
                    .iter()
                    .map(|e| {
                        json!({
                            "label": e.label,
                            "bundle": e.bundle,
                            "c1": match e.sign {
                                topology::GeneratorSign::Plus => "+c",
                                topology::GeneratorSign::Minus => "-c",
                            },
                        })
                    })
                    .collect(),
            );
        }
    }
    let config = serde_json::to_value(&a).unwrap();
    Ok(("euler", a.seed, config, report, Vec::new()))
}
