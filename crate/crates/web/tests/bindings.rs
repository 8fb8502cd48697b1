//! Native checks of the logic behind the WebAssembly exports.

use hyptr_web::{invariants_json, omega03_json, period_matrix_json};
use serde_json::Value;

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn invariants_of_x6_plus_1() {
    let v = parse(&invariants_json("[1, 0, 0, 0, 0, 0, 1]").unwrap());
    assert!((v["A"][0].as_f64().unwrap() + 240.0).abs() < 1e-9);
    assert_eq!(v["j"].as_array().unwrap().len(), 3);
    assert!(invariants_json("[1, 2]").is_err());
    assert!(invariants_json("[1, -2, 1, 0, 1, -2, 1]").unwrap_err().contains("degenerate"));
}

#[test]
fn period_matrix_satisfies_bilinear_relations() {
    let v = parse(&period_matrix_json("[1, 0, 0, 0, 0, 0, 1]").unwrap());
    assert!(v["bilinear_residual"].as_f64().unwrap() < 1e-7);
    assert!(v["tau"][0][0][1].as_f64().unwrap() > 0.0);
}

#[test]
fn omega03_agrees_with_residue_formula() {
    let v = parse(&omega03_json("[0.1, 0.05, 0.01]", "[0.3, [0.2, 0.5], -0.7]").unwrap());
    let d = (v["value"][0].as_f64().unwrap() - v["residue_form"][0].as_f64().unwrap())
        .hypot(v["value"][1].as_f64().unwrap() - v["residue_form"][1].as_f64().unwrap());
    assert!(d < 1e-7);
    assert!(omega03_json("[0.1, 0.05]", "[0.3, 0.2, -0.7]").is_err());
}
