//! Small fixed-size complex matrices.

use nalgebra::{Matrix2, Matrix4, Vector2};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type Matrix2C = Matrix2<Complex64>;
pub type Matrix4C = Matrix4<Complex64>;
pub type Vector2C = Vector2<Complex64>;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn cr(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Inverse of a 2x2 matrix, failing on a (relatively) vanishing determinant.
pub fn inv2(m: &Matrix2C) -> Result<Matrix2C> {
    let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
    let scale = m.iter().map(|v| v.norm()).fold(0.0, f64::max).powi(2);
    if det.norm() <= 1e-300 || det.norm() < 1e-14 * scale {
        return Err(Error::SingularDenominator);
    }
    Ok(Matrix2C::new(m[(1, 1)], -m[(0, 1)], -m[(1, 0)], m[(0, 0)]) / det)
}

pub fn det2(m: &Matrix2C) -> Complex64 {
    m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]
}

pub fn inv4(m: &Matrix4C) -> Result<Matrix4C> {
    m.try_inverse().ok_or(Error::SingularDenominator)
}

/// Largest entry modulus.
pub fn max_abs2(m: &Matrix2C) -> f64 {
    m.iter().map(|v| v.norm()).fold(0.0, f64::max)
}

pub fn max_abs4(m: &Matrix4C) -> f64 {
    m.iter().map(|v| v.norm()).fold(0.0, f64::max)
}

/// Eigenvalues (ascending) of the real symmetric part of `Im m`.
pub fn imag_eigenvalues(m: &Matrix2C) -> (f64, f64) {
    let a = m[(0, 0)].im;
    let d = m[(1, 1)].im;
    let b = 0.5 * (m[(0, 1)].im + m[(1, 0)].im);
    let mean = 0.5 * (a + d);
    let rad = (0.25 * (a - d) * (a - d) + b * b).sqrt();
    (mean - rad, mean + rad)
}

/// Blocks `(top-left, top-right, bottom-left, bottom-right)` of a 4x4 matrix.
pub fn blocks(m: &Matrix4C) -> (Matrix2C, Matrix2C, Matrix2C, Matrix2C) {
    let b = |r: usize, c: usize| Matrix2C::new(m[(r, c)], m[(r, c + 1)], m[(r + 1, c)], m[(r + 1, c + 1)]);
    (b(0, 0), b(0, 2), b(2, 0), b(2, 2))
}

pub fn from_blocks(tl: &Matrix2C, tr: &Matrix2C, bl: &Matrix2C, br: &Matrix2C) -> Matrix4C {
    let mut m = Matrix4C::zeros();
    for i in 0..2 {
        for j in 0..2 {
            m[(i, j)] = tl[(i, j)];
            m[(i, j + 2)] = tr[(i, j)];
            m[(i + 2, j)] = bl[(i, j)];
            m[(i + 2, j + 2)] = br[(i, j)];
        }
    }
    m
}

/// The standard symplectic form `((0, 1), (-1, 0))` as a complex matrix.
pub fn j4() -> Matrix4C {
    let mut m = Matrix4C::zeros();
    m[(0, 2)] = cr(1.0);
    m[(1, 3)] = cr(1.0);
    m[(2, 0)] = cr(-1.0);
    m[(3, 1)] = cr(-1.0);
    m
}

/// `Matrix2` with every entry of `Matrix2<f64>`/`i64` lifted to complex.
pub fn lift2(m: &[[i64; 2]; 2]) -> Matrix2C {
    Matrix2C::new(cr(m[0][0] as f64), cr(m[0][1] as f64), cr(m[1][0] as f64), cr(m[1][1] as f64))
}
