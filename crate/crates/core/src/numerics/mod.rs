//! Scalar, series, polynomial, matrix and quadrature arithmetic.

pub mod biseries;
pub mod linalg;
pub mod poly;
pub mod quadrature;
pub mod series;

pub use biseries::BiSeries;
pub use linalg::{c, cr, Matrix2C, Matrix4C, Vector2C};
pub use poly::Poly;
pub use quadrature::{integrate_segment, integrate_segment_adaptive, QuadratureOptions, QuadratureRule, RuleKind, SingularEnds};
pub use series::LaurentSeries;

pub use num_complex::Complex64;

/// Relative difference `|a - b| / max(|a|, |b|, floor)`.
pub fn rel_err(a: Complex64, b: Complex64, floor: f64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(floor)
}
