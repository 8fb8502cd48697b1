//! WebAssembly bindings for a static demo page.
//!
//! Each export takes and returns JSON text. Complex numbers are numbers or
//! `[re, im]` pairs. The `*_json` functions hold the logic so they can be
//! tested natively; the exports only convert errors.

use hyptr_core::curve::{BinaryInvariants, HyperellipticCurve};
use hyptr_core::kernels::KernelChoice;
use hyptr_core::mirror::MirrorModuli;
use hyptr_core::numerics::Complex64;
use hyptr_core::periods::compute;
use hyptr_core::recursion::{omega03_residue_form, Recursion, SpectralCurve};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn complex(v: &Value) -> Result<Complex64, String> {
    match v {
        Value::Number(n) => Ok(Complex64::new(n.as_f64().unwrap_or(f64::NAN), 0.0)),
        Value::Array(p) if p.len() == 2 => match (p[0].as_f64(), p[1].as_f64()) {
            (Some(re), Some(im)) => Ok(Complex64::new(re, im)),
            _ => Err(format!("{v} is not a complex number")),
        },
        _ => Err(format!("{v} is not a complex number")),
    }
}

fn complex_list(text: &str) -> Result<Vec<Complex64>, String> {
    let v: Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
    v.as_array().ok_or("expected a JSON list")?.iter().map(complex).collect()
}

fn c(z: Complex64) -> Value {
    json!([z.re, z.im])
}

/// Seven coefficients give a sextic, six a quintic.
fn curve(text: &str) -> Result<HyperellipticCurve, String> {
    let a = complex_list(text)?;
    match a.len() {
        7 => HyperellipticCurve::sextic(&a),
        6 => HyperellipticCurve::quintic(&a),
        n => return Err(format!("{n} coefficients: expected 7 or 6")),
    }
    .map_err(|e| e.to_string())
}

pub fn invariants_json(coeffs: &str) -> Result<String, String> {
    let sextic = curve(coeffs)?.sextic_closure().map_err(|e| e.to_string())?;
    let inv = BinaryInvariants::of(&sextic).map_err(|e| e.to_string())?;
    let mut out = json!({ "A": c(inv.a), "B": c(inv.b), "C": c(inv.c), "D": c(inv.d) });
    if let Ok(j) = inv.absolute() {
        out["j"] = json!([c(j.j1), c(j.j2), c(j.j3)]);
    }
    Ok(out.to_string())
}

pub fn period_matrix_json(coeffs: &str) -> Result<String, String> {
    let pd = compute(&curve(coeffs)?).map_err(|e| e.to_string())?;
    let t = pd.tau;
    Ok(json!({
        "tau": [[c(t[(0, 0)]), c(t[(0, 1)])], [c(t[(1, 0)]), c(t[(1, 1)])]],
        "bilinear_residual": pd.bilinear_residual(),
    })
    .to_string())
}

/// `omega_{0,3}` on the mirror curve for moduli `[q1, q2, q3]` at three
/// abscissae on the principal sheet, beside the residue formula.
pub fn omega03_json(moduli: &str, xs: &str) -> Result<String, String> {
    let q = complex_list(moduli)?;
    let x = complex_list(xs)?;
    if q.len() != 3 || x.len() != 3 {
        return Err("expected three moduli and three abscissae".into());
    }
    let m = MirrorModuli::new(q[0], q[1], q[2]);
    let sc = SpectralCurve::new(m, KernelChoice::Bergman, 0, 3).map_err(|e| e.to_string())?;
    let pts: Vec<_> = x.iter().map(|x| (*x, sc.curve().f(*x).sqrt())).collect();
    let mut rec = Recursion::new(sc);
    let w = rec.omega(0, 3).map_err(|e| e.to_string())?;
    let value = rec.evaluate(&w, &pts).map_err(|e| e.to_string())?;
    let residue = omega03_residue_form(&rec.curve, [x[0], x[1], x[2]]);
    Ok(json!({ "value": c(value), "residue_form": c(residue) }).to_string())
}

#[wasm_bindgen]
pub fn invariants(coeffs: &str) -> Result<String, JsError> {
    invariants_json(coeffs).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn period_matrix(coeffs: &str) -> Result<String, JsError> {
    period_matrix_json(coeffs).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn omega03(moduli: &str, xs: &str) -> Result<String, JsError> {
    omega03_json(moduli, xs).map_err(|e| JsError::new(&e))
}
