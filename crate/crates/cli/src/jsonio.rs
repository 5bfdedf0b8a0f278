//! JSON encoding of core types and parsing of map specifications.
//!
//! Conventions: complex scalars are `[re, im]` pairs (plain numbers are
//! accepted on input and used on output when the imaginary part is zero);
//! matrices are row-major nested arrays; projective points are
//! `{"homog": [...]}`; blowup points are `{"x": [...], "y": {"homog": ...}}`.

use blowup_core::dynamics::{FixedComponent, FixedSetOnSigma};
use blowup_core::linalg::{Field, Matrix};
use blowup_core::map::{MapSpec, Monomial, ResidualReport};
use blowup_core::model::BlowupPoint;
use blowup_core::projective::ProjPoint;
use num_complex::Complex64;
use serde_json::{json, Map, Value};

pub fn scalar_to_json(z: Complex64) -> Value {
    if z.im == 0.0 {
        json!(z.re)
    } else {
        json!([z.re, z.im])
    }
}

pub fn scalar_from_json(v: &Value) -> Result<Complex64, String> {
    match v {
        Value::Number(n) => Ok(Complex64::new(
            n.as_f64().ok_or_else(|| format!("non-finite number {n}"))?,
            0.0,
        )),
        Value::Array(a) if a.len() == 2 => {
            let re = a[0].as_f64().ok_or("complex scalar entries must be numbers")?;
            let im = a[1].as_f64().ok_or("complex scalar entries must be numbers")?;
            Ok(Complex64::new(re, im))
        }
        other => Err(format!("expected number or [re, im], got {other}")),
    }
}

pub fn vector_to_json(v: &[Complex64]) -> Value {
    Value::Array(v.iter().map(|z| scalar_to_json(*z)).collect())
}

pub fn vector_from_json(v: &Value) -> Result<Vec<Complex64>, String> {
    v.as_array()
        .ok_or_else(|| format!("expected an array, got {v}"))?
        .iter()
        .map(scalar_from_json)
        .collect()
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    let n = m.dim();
    Value::Array(
        (0..n)
            .map(|i| Value::Array((0..n).map(|j| scalar_to_json(m.get(i, j))).collect()))
            .collect(),
    )
}

pub fn matrix_from_json(v: &Value, field: Field) -> Result<Matrix, String> {
    let rows = v.as_array().ok_or_else(|| format!("matrix must be a nested array, got {v}"))?;
    let n = rows.len();
    let mut data = Vec::with_capacity(n * n);
    for row in rows {
        let entries = vector_from_json(row)?;
        if entries.len() != n {
            return Err(format!("matrix row has {} entries, expected {n}", entries.len()));
        }
        data.extend(entries);
    }
    Matrix::new(field, n, data).map_err(|e| e.to_string())
}

pub fn proj_point_to_json(p: &ProjPoint) -> Value {
    json!({ "homog": vector_to_json(p.homog()) })
}

pub fn blowup_point_to_json(p: &BlowupPoint) -> Value {
    json!({ "x": vector_to_json(p.base()), "y": proj_point_to_json(p.fiber()) })
}

pub fn field_from_str(s: &str) -> Result<Field, String> {
    match s {
        "R" | "r" | "real" | "Real" => Ok(Field::Real),
        "C" | "c" | "complex" | "Complex" => Ok(Field::Complex),
        other => Err(format!("unknown field tag {other:?}; use R or C")),
    }
}

pub fn field_to_str(f: Field) -> &'static str {
    match f {
        Field::Real => "R",
        Field::Complex => "C",
    }
}

fn get<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value, String> {
    obj.get(key).ok_or_else(|| format!("map spec missing field {key:?}"))
}

pub fn map_spec_from_json(v: &Value) -> Result<MapSpec, String> {
    let obj = v.as_object().ok_or_else(|| format!("map spec must be an object, got {v}"))?;
    let family = get(obj, "family")?.as_str().ok_or("family must be a string")?;
    let spec = match family {
        "linear" => {
            let field = match obj.get("field") {
                Some(f) => field_from_str(f.as_str().ok_or("field must be a string")?)?,
                None => Field::Real,
            };
            MapSpec::Linear(matrix_from_json(get(obj, "matrix")?, field)?)
        }
        "paper_example_c1" => MapSpec::PaperExampleC1,
        "kink_power" => {
            let order = get(obj, "order")?.as_u64().ok_or("order must be a positive integer")?;
            MapSpec::KinkPower { order: order as u32 }
        }
        "polynomial" => {
            let field = field_from_str(get(obj, "field")?.as_str().ok_or("field must be a string")?)?;
            let n = get(obj, "n")?.as_u64().ok_or("n must be an integer")? as usize;
            let coords_json =
                get(obj, "coords")?.as_array().ok_or("coords must be an array per coordinate")?;
            let mut coords = Vec::with_capacity(coords_json.len());
            for coord in coords_json {
                let terms = coord.as_array().ok_or("each coordinate must be a term array")?;
                let mut monos = Vec::with_capacity(terms.len());
                for t in terms {
                    let t = t.as_object().ok_or("each term must be an object")?;
                    let exponents: Vec<u32> = get(t, "exponents")?
                        .as_array()
                        .ok_or("exponents must be an array")?
                        .iter()
                        .map(|e| e.as_u64().map(|x| x as u32).ok_or("exponents must be integers"))
                        .collect::<Result<_, _>>()?;
                    let coeff = scalar_from_json(get(t, "coeff")?)?;
                    monos.push(Monomial { exponents, coeff });
                }
                coords.push(monos);
            }
            MapSpec::Polynomial { field, n, coords }
        }
        "rotation_scaling" => {
            let lambda = get(obj, "lambda")?.as_f64().ok_or("lambda must be a number")?;
            let theta = get(obj, "theta")?.as_f64().ok_or("theta must be a number")?;
            MapSpec::RotationScaling { lambda, theta }
        }
        "composite" => {
            let maps = get(obj, "maps")?.as_array().ok_or("maps must be an array")?;
            MapSpec::Composite(maps.iter().map(map_spec_from_json).collect::<Result<_, _>>()?)
        }
        other => return Err(format!("unknown map family {other:?}")),
    };
    spec.validate().map_err(|e| e.to_string())?;
    Ok(spec)
}

pub fn map_spec_to_json(spec: &MapSpec) -> Value {
    match spec {
        MapSpec::Linear(m) => json!({
            "family": "linear",
            "field": field_to_str(m.field()),
            "matrix": matrix_to_json(m),
        }),
        MapSpec::PaperExampleC1 => json!({ "family": "paper_example_c1" }),
        MapSpec::KinkPower { order } => json!({ "family": "kink_power", "order": order }),
        MapSpec::Polynomial { field, n, coords } => json!({
            "family": "polynomial",
            "field": field_to_str(*field),
            "n": n,
            "coords": coords.iter().map(|c| Value::Array(
                c.iter().map(|m| json!({
                    "exponents": m.exponents,
                    "coeff": scalar_to_json(m.coeff),
                })).collect()
            )).collect::<Vec<_>>(),
        }),
        MapSpec::RotationScaling { lambda, theta } => json!({
            "family": "rotation_scaling",
            "lambda": lambda,
            "theta": theta,
        }),
        MapSpec::Composite(parts) => json!({
            "family": "composite",
            "maps": parts.iter().map(map_spec_to_json).collect::<Vec<_>>(),
        }),
    }
}

pub fn fixed_component_to_json(c: &FixedComponent) -> Value {
    json!({
        "lambda": [c.lambda.re, c.lambda.im],
        "proj_dim": c.proj_dim(),
        "description": c.description,
        "basis": c.basis.iter().map(|v| vector_to_json(v)).collect::<Vec<_>>(),
    })
}

pub fn fixed_set_to_json(f: &FixedSetOnSigma) -> Value {
    json!({
        "field": field_to_str(f.field),
        "components": f.components.iter().map(fixed_component_to_json).collect::<Vec<_>>(),
        "rotational_classes": f.rotational_classes.iter()
            .map(|l| json!([l.re, l.im])).collect::<Vec<_>>(),
    })
}

pub fn residual_report_to_json(r: &ResidualReport) -> Value {
    json!({
        "samples": r.samples,
        "max_base_residual": r.max_base_residual,
        "max_fiber_residual": r.max_fiber_residual,
        "max_incidence_residual": r.max_incidence_residual,
        "max_residual": r.max_residual(),
        "tol": r.tol,
        "seed": r.seed,
        "pass": r.pass(),
    })
}
