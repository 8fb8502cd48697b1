//! Parsing of command-line values. Complex numbers are JSON numbers or
//! `[re, im]` pairs; curves and matrices are JSON, inline or in a file.

use std::path::Path;

use hyptr_core::curve::{HyperellipticCurve, Model};
use hyptr_core::mirror::MirrorModuli;
use hyptr_core::numerics::{Complex64, Matrix2C, Vector2C};
use serde_json::Value;

use crate::error::{CliError, CliResult};

/// Inline JSON, or the contents of the named file.
fn json_arg(text: &str) -> CliResult<Value> {
    let body = if Path::new(text).is_file() {
        std::fs::read_to_string(text).map_err(|e| CliError::usage(format!("cannot read {text}: {e}")))?
    } else {
        text.to_string()
    };
    serde_json::from_str(&body).map_err(|e| CliError::usage(format!("bad JSON {text:?}: {e}")))
}

pub fn complex_value(v: &Value) -> CliResult<Complex64> {
    match v {
        Value::Number(n) => Ok(Complex64::new(n.as_f64().unwrap_or(f64::NAN), 0.0)),
        Value::Array(p) if p.len() == 2 => match (p[0].as_f64(), p[1].as_f64()) {
            (Some(re), Some(im)) => Ok(Complex64::new(re, im)),
            _ => Err(CliError::usage(format!("{v} is not a complex number"))),
        },
        _ => Err(CliError::usage(format!("{v} is not a complex number"))),
    }
}

pub fn complex(text: &str) -> CliResult<Complex64> {
    complex_value(&json_arg(text)?)
}

fn complex_list(v: &Value) -> CliResult<Vec<Complex64>> {
    v.as_array().ok_or_else(|| CliError::usage(format!("{v} is not a list")))?.iter().map(complex_value).collect()
}

/// `[a0, ..., a6]` (sextic), `[b0, ..., b5]` (quintic), or
/// `{"model": "sextic" | "quintic" | "rosenhain", "coeffs": [...]}`.
pub fn curve(text: &str) -> CliResult<HyperellipticCurve> {
    let v = json_arg(text)?;
    let (model, coeffs) = match &v {
        Value::Array(_) => {
            let c = complex_list(&v)?;
            let model = match c.len() {
                7 => Model::Sextic,
                6 => Model::Quintic,
                n => return Err(CliError::usage(format!("{n} coefficients: expected 7 (sextic) or 6 (quintic)"))),
            };
            (model, c)
        }
        Value::Object(o) => {
            let model = match o.get("model").and_then(Value::as_str) {
                Some("sextic") => Model::Sextic,
                Some("quintic") => Model::Quintic,
                Some("rosenhain") => Model::Rosenhain,
                other => return Err(CliError::usage(format!("unknown model {other:?}"))),
            };
            let c = complex_list(o.get("coeffs").ok_or_else(|| CliError::usage("curve object needs \"coeffs\""))?)?;
            (model, c)
        }
        _ => return Err(CliError::usage("a curve is a coefficient list or an object")),
    };
    Ok(HyperellipticCurve::from_model(model, &coeffs)?)
}

/// `[[t11, t12], [t21, t22]]`.
pub fn matrix2(text: &str) -> CliResult<Matrix2C> {
    let v = json_arg(text)?;
    let rows = v.as_array().filter(|r| r.len() == 2).ok_or_else(|| CliError::usage("expected a 2x2 matrix"))?;
    let r0 = complex_list(&rows[0])?;
    let r1 = complex_list(&rows[1])?;
    if r0.len() != 2 || r1.len() != 2 {
        return Err(CliError::usage("expected a 2x2 matrix"));
    }
    Ok(Matrix2C::new(r0[0], r0[1], r1[0], r1[1]))
}

pub fn vector2(text: &str) -> CliResult<Vector2C> {
    let c = complex_list(&json_arg(text)?)?;
    if c.len() != 2 {
        return Err(CliError::usage("expected a 2-vector"));
    }
    Ok(Vector2C::new(c[0], c[1]))
}

pub fn vector3(text: &str) -> CliResult<[Complex64; 3]> {
    let c = complex_list(&json_arg(text)?)?;
    <[Complex64; 3]>::try_from(c).map_err(|_| CliError::usage("expected a 3-vector"))
}

pub fn moduli(q1: &str, q2: &str, q3: &str) -> CliResult<MirrorModuli> {
    Ok(MirrorModuli::new(complex(q1)?, complex(q2)?, complex(q3)?))
}

/// Four bits `xyzw`.
pub fn characteristic(text: &str) -> CliResult<[u8; 4]> {
    let b = text.as_bytes();
    if b.len() != 4 || b.iter().any(|c| *c != b'0' && *c != b'1') {
        return Err(CliError::usage(format!("characteristic {text:?} must be four bits like 0110")));
    }
    Ok([b[0] - b'0', b[1] - b'0', b[2] - b'0', b[3] - b'0'])
}

pub fn complex_list_arg(text: &str) -> CliResult<Vec<Complex64>> {
    complex_list(&json_arg(text)?)
}
