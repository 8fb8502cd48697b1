//! Genus-two Riemann theta functions with characteristics.
//!
//! `theta[a, b](v, tau) = sum_n exp(pi i (n+a)^t tau (n+a) + 2 pi i (n+a)^t (v+b))`,
//! summed over a box centred on the dominant lattice point.

mod forms;
pub mod identities;

pub use forms::{cusp_forms, forms_from_constants, gopel_complements, gopel_quadruples, igusa_from_tau, rosenhain_lambdas, SiegelForms, SYZYGOUS_SIGNS};

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::linalg::{imag_eigenvalues, inv2};
use crate::numerics::{Matrix2C, Vector2C};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// A characteristic `(a, b)`; level-two characteristics have entries in `{0, 1/2}` mod 1.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThetaCharacteristic {
    pub a: [f64; 2],
    pub b: [f64; 2],
}

impl ThetaCharacteristic {
    pub fn new(a: [f64; 2], b: [f64; 2]) -> Self {
        Self { a, b }
    }

    /// `theta_xyzw`: `a = (x, y)/2`, `b = (z, w)/2`.
    pub fn from_bits(bits: [u8; 4]) -> Self {
        let h = |k: u8| k as f64 * 0.5;
        Self { a: [h(bits[0]), h(bits[1])], b: [h(bits[2]), h(bits[3])] }
    }

    /// Bits of `2a, 2b` reduced mod 2, if all entries are half-integers.
    pub fn bits(&self) -> Option<[u8; 4]> {
        let mut out = [0u8; 4];
        for (k, v) in [self.a[0], self.a[1], self.b[0], self.b[1]].iter().enumerate() {
            let t = 2.0 * v;
            if (t - t.round()).abs() > 1e-12 {
                return None;
            }
            out[k] = (t.round() as i64).rem_euclid(2) as u8;
        }
        Some(out)
    }

    /// Label `"xyzw"` of a level-two characteristic.
    pub fn label(&self) -> String {
        match self.bits() {
            Some(b) => b.iter().map(|v| char::from(b'0' + v)).collect(),
            None => format!("({:?},{:?})", self.a, self.b),
        }
    }

    /// The representative with entries in `{0, 1/2}`.
    pub fn reduced(&self) -> Self {
        match self.bits() {
            Some(b) => Self::from_bits(b),
            None => *self,
        }
    }

    /// `4 a.b mod 2` for level-two characteristics (0 = even, 1 = odd).
    pub fn parity(&self) -> u8 {
        let b = self.bits().expect("level-two characteristic");
        (b[0] * b[2] + b[1] * b[3]) % 2
    }

    pub fn is_even(&self) -> bool {
        self.parity() == 0
    }

    /// Sum of level-two characteristics, reduced mod 1.
    pub fn add(&self, o: &Self) -> Self {
        let x = self.bits().expect("level-two characteristic");
        let y = o.bits().expect("level-two characteristic");
        Self::from_bits([x[0] ^ y[0], x[1] ^ y[1], x[2] ^ y[2], x[3] ^ y[3]])
    }

    /// All 16 level-two characteristics, ordered by the integer `xyzw`.
    pub fn all() -> Vec<Self> {
        (0u8..16).map(|k| Self::from_bits([(k >> 3) & 1, (k >> 2) & 1, (k >> 1) & 1, k & 1])).collect()
    }

    pub fn evens() -> Vec<Self> {
        Self::all().into_iter().filter(|c| c.is_even()).collect()
    }

    pub fn odds() -> Vec<Self> {
        Self::all().into_iter().filter(|c| !c.is_even()).collect()
    }
}

/// Third derivatives `t[i][j][k]`.
pub type Tensor3 = [[[Complex64; 2]; 2]; 2];

/// Theta value with derivatives in `v`.
#[derive(Clone, Debug)]
pub struct ThetaValue {
    pub value: Complex64,
    pub gradient: Vector2C,
    pub hessian: Matrix2C,
    /// Present when third derivatives were requested.
    pub third: Option<Tensor3>,
    pub trunc_radius: i64,
}

impl ThetaValue {
    /// `d^2 log theta`.
    pub fn log_hessian(&self) -> Matrix2C {
        let g = self.gradient;
        (self.hessian * self.value - g * g.transpose()) / (self.value * self.value)
    }
}

/// Box half-width from the tail-bound rule.
pub fn truncation_radius(tau: &Matrix2C) -> Result<i64> {
    let (lo, _) = imag_eigenvalues(tau);
    if !(lo > 0.0) || (tau[(0, 1)] - tau[(1, 0)]).norm() > 1e-8 * (1.0 + tau.norm()) {
        return Err(Error::NotInSiegelSpace);
    }
    Ok((14.0 * std::f64::consts::LN_10 / (PI * lo)).sqrt().ceil() as i64 + 2)
}

/// `theta[ch](v, tau)` with derivatives up to `derivs` (0..=3).
pub fn theta(ch: &ThetaCharacteristic, v: &Vector2C, tau: &Matrix2C, derivs: u8) -> Result<ThetaValue> {
    let n = truncation_radius(tau)?;
    theta_with_radius(ch, v, tau, derivs, n)
}

pub fn theta_with_radius(ch: &ThetaCharacteristic, v: &Vector2C, tau: &Matrix2C, derivs: u8, n: i64) -> Result<ThetaValue> {
    let y = tau.map(|z| Complex64::new(z.im, 0.0));
    let y_inv = inv2(&y)?;
    let w = Vector2C::new(Complex64::new(v[0].im, 0.0), Complex64::new(v[1].im, 0.0));
    let centre = -(y_inv * w);
    let c0 = (centre[0].re - ch.a[0]).round() as i64;
    let c1 = (centre[1].re - ch.a[1]).round() as i64;
    let two_pi_i = Complex64::new(0.0, 2.0 * PI);
    let phase = |m0: f64, m1: f64| -> Complex64 {
        let quad = tau[(0, 0)] * m0 * m0 + tau[(0, 1)] * (2.0 * m0 * m1) + tau[(1, 1)] * m1 * m1;
        Complex64::new(0.0, PI) * quad + two_pi_i * ((v[0] + ch.b[0]) * m0 + (v[1] + ch.b[1]) * m1)
    };
    let reference = phase(c0 as f64 + ch.a[0], c1 as f64 + ch.a[1]).re;
    let mut val = ZERO;
    let mut grad = [ZERO; 2];
    let mut hess = [[ZERO; 2]; 2];
    let mut third = [[[ZERO; 2]; 2]; 2];
    for i in -n..=n {
        for j in -n..=n {
            let m = [(c0 + i) as f64 + ch.a[0], (c1 + j) as f64 + ch.a[1]];
            let p = phase(m[0], m[1]);
            let t = Complex64::new(p.re - reference, p.im).exp();
            val += t;
            if derivs >= 1 {
                let f = [two_pi_i * m[0], two_pi_i * m[1]];
                for a in 0..2 {
                    grad[a] += t * f[a];
                    if derivs >= 2 {
                        for b in 0..2 {
                            hess[a][b] += t * f[a] * f[b];
                            if derivs >= 3 {
                                for c in 0..2 {
                                    third[a][b][c] += t * f[a] * f[b] * f[c];
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let scale = reference.exp();
    let s = |z: Complex64| z * scale;
    Ok(ThetaValue {
        value: s(val),
        gradient: Vector2C::new(s(grad[0]), s(grad[1])),
        hessian: Matrix2C::new(s(hess[0][0]), s(hess[0][1]), s(hess[1][0]), s(hess[1][1])),
        third: (derivs >= 3).then(|| third.map(|r| r.map(|c| c.map(s)))),
        trunc_radius: n,
    })
}

/// Theta constants of the ten even characteristics, in the order of
/// `ThetaCharacteristic::evens()`.
pub fn theta_constants(tau: &Matrix2C) -> Result<Vec<(ThetaCharacteristic, Complex64)>> {
    let zero = Vector2C::zeros();
    ThetaCharacteristic::evens()
        .into_iter()
        .map(|c| Ok((c, theta(&c, &zero, tau, 0)?.value)))
        .collect()
}

/// Theta constant by label bits.
pub fn theta_constant(bits: [u8; 4], tau: &Matrix2C) -> Result<Complex64> {
    Ok(theta(&ThetaCharacteristic::from_bits(bits), &Vector2C::zeros(), tau, 0)?.value)
}
