//! The mirror curve `1 + X + Y + q1 X^2 + q2 X^3 + q3 X^6 / Y = 0` of the
//! resolved C^3/Z_6 orbifold, its sextic reduction, the differential
//! `lambda = log Y dX/X` near the branch points, and the mirror-map series.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::curve::{absolute_invariants, HyperellipticCurve};
use crate::error::{Error, Result};
use crate::kernels::LocalChart;
use crate::numerics::{LaurentSeries, Poly};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MirrorModuli {
    pub q1: Complex64,
    pub q2: Complex64,
    pub q3: Complex64,
}

impl MirrorModuli {
    pub fn new(q1: Complex64, q2: Complex64, q3: Complex64) -> Self {
        Self { q1, q2, q3 }
    }

    /// `(s1, s2, s3) = (q1, q2/q1^2, q3/q2^2)`.
    pub fn s(&self) -> [Complex64; 3] {
        [self.q1, self.q2 / (self.q1 * self.q1), self.q3 / (self.q2 * self.q2)]
    }

    /// `h(X) = (1 + X + q1 X^2 + q2 X^3)/2`, with `Y~ = Y + h(X)`.
    pub fn h(&self) -> Poly {
        let half = Complex64::new(0.5, 0.0);
        Poly::new(vec![half, half, self.q1 * 0.5, self.q2 * 0.5])
    }

    /// Coefficients `a0..a6` of `Y~^2 = h(X)^2 - q3 X^6`, `a0` the `X^6` coefficient.
    pub fn sextic_coefficients(&self) -> [Complex64; 7] {
        let (q1, q2, q3) = (self.q1, self.q2, self.q3);
        let c = |v: f64| Complex64::new(v, 0.0);
        [q2 * q2 * 0.25 - q3, q1 * q2 * 0.5, q1 * q1 * 0.25 + q2 * 0.5, (q1 + q2) * 0.5, c(0.25) + q1 * 0.5, c(0.5), c(0.25)]
    }
}

pub fn mirror_sextic(m: &MirrorModuli) -> Result<HyperellipticCurve> {
    let a = m.sextic_coefficients();
    if a[0].norm() < 1e-14 * (1.0 + m.q3.norm()) {
        return Err(Error::LeadingCoefficientZero);
    }
    HyperellipticCurve::sextic(&a)
}

/// `Y = Y~ - h(X)` in the chart: `z s(z) - h(r + rho z^2)`.
fn y_mirror(m: &MirrorModuli, chart: &LocalChart, order: usize) -> Result<LaurentSeries> {
    let x = chart.x_series(order);
    let h = m.h();
    let mut hs = LaurentSeries::monomial(0, h.c[h.c.len() - 1], order as i32);
    for c in h.c.iter().rev().skip(1) {
        hs = &(&hs * &x).truncate(order as i32) + &LaurentSeries::monomial(0, *c, order as i32);
    }
    if hs.at(0).norm() < 1e-12 {
        return Err(Error::LogBranchPointAtRamification);
    }
    if chart.r.norm() < 1e-12 {
        return Err(Error::RamificationAtXZero);
    }
    Ok(&chart.y_series().truncate(order as i32) - &hs)
}

/// Coefficient of `dz` in `lambda = log Y dX/X` at a branch point, with the
/// principal branch of `log(-h(r))` at `z = 0`.
pub fn lambda_series(m: &MirrorModuli, chart: &LocalChart, order: usize) -> Result<LaurentSeries> {
    lambda_series_with_branch(m, chart, order, 0)
}

/// As `lambda_series` with the log shifted by `2 pi i k`.
pub fn lambda_series_with_branch(m: &MirrorModuli, chart: &LocalChart, order: usize, k: i32) -> Result<LaurentSeries> {
    let y = y_mirror(m, chart, order)?;
    let mut log_y = y.log()?;
    log_y = &log_y + &LaurentSeries::monomial(0, Complex64::new(0.0, 2.0 * std::f64::consts::PI * k as f64), order as i32);
    let x = chart.x_series(order);
    let dx = x.derivative();
    Ok((&(&log_y * &dx) * &x.invert()?).truncate(order as i32 - 1))
}

/// `log Y(z) - log Y(-z) = -2 atanh(z s(z)/h(x(z)))`, odd in `z`.
pub fn log_ratio_series(m: &MirrorModuli, chart: &LocalChart, order: usize) -> Result<LaurentSeries> {
    let y = y_mirror(m, chart, order)?;
    let yt = chart.y_series().truncate(order as i32);
    let h = &yt - &y;
    Ok((&yt * &h.invert()?).truncate(order as i32).atanh()?.scale(Complex64::new(-2.0, 0.0)))
}

/// Coefficient of `dz` in `lambda(p) - lambda(p*)`.
pub fn delta_lambda_series(m: &MirrorModuli, chart: &LocalChart, order: usize) -> Result<LaurentSeries> {
    let x = chart.x_series(order + 1);
    let dx = x.derivative();
    let l = log_ratio_series(m, chart, order + 1)?;
    let d = (&(&l * &dx) * &x.invert()?).truncate(order as i32);
    let lead = d.normalized();
    if lead.lead_order() != 2 || lead.at(2).norm() < 1e-10 {
        return Err(Error::NonSimpleRamification);
    }
    Ok(d)
}

pub type Monomial = [u32; 3];

/// Truncated mirror-map series in `(s1, s2, s3)`, each exponent `<= degree`.
#[derive(Clone, Debug)]
pub struct MirrorSeries {
    pub degree: u32,
    /// Exact coefficients of `A2, A3, A4` (`A1 = 0`).
    pub a: [BTreeMap<Monomial, Ratio<i128>>; 3],
    /// Coefficients of `Q_k / s_k`.
    pub q: [BTreeMap<Monomial, f64>; 3],
}

fn factorial(n: u32) -> i128 {
    (1..=n as i128).product()
}

fn sign(e: i64) -> i128 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn a2_series(deg: u32) -> BTreeMap<Monomial, Ratio<i128>> {
    let mut out = BTreeMap::new();
    for d1 in 1..=deg {
        for d2 in 0..=(d1 / 2).min(deg) {
            for d3 in 0..=(d2 / 2).min(deg) {
                let num = sign(d2 as i64 - 1) * factorial(2 * d1 - d2 - 1);
                let den = factorial(d1) * factorial(d1 - 2 * d2) * factorial(d2 - 2 * d3) * factorial(d3).pow(2);
                out.insert([d1, d2, d3], Ratio::new(num, den));
            }
        }
    }
    out
}

fn a3_series(deg: u32) -> BTreeMap<Monomial, Ratio<i128>> {
    let mut out = BTreeMap::new();
    for d2 in 1..=deg {
        for d1 in 0..=(d2 / 2).min(deg) {
            for d3 in 0..=(d2 / 2).min(deg) {
                let num = sign(d1 as i64 - 1) * factorial(2 * d2 - d1 - 1);
                let den = factorial(d1) * factorial(d2 - 2 * d1) * factorial(d2 - 2 * d3) * factorial(d3).pow(2);
                out.insert([d1, d2, d3], Ratio::new(num, den));
            }
        }
    }
    out
}

fn a4_series(deg: u32) -> BTreeMap<Monomial, Ratio<i128>> {
    (1..=deg).map(|d3| ([0, 0, d3], Ratio::new(-factorial(2 * d3 - 1), factorial(d3).pow(2)))).collect()
}

/// Dense series in three variables, exponents `<= deg` each.
#[derive(Clone)]
struct Dense3 {
    deg: usize,
    c: Vec<f64>,
}

impl Dense3 {
    fn zero(deg: usize) -> Self {
        Self { deg, c: vec![0.0; (deg + 1).pow(3)] }
    }

    fn idx(&self, m: [usize; 3]) -> usize {
        (m[0] * (self.deg + 1) + m[1]) * (self.deg + 1) + m[2]
    }

    fn from_map(deg: usize, terms: &[(&BTreeMap<Monomial, Ratio<i128>>, f64)]) -> Self {
        let mut s = Self::zero(deg);
        for (map, w) in terms {
            for (m, v) in map.iter() {
                let i = s.idx([m[0] as usize, m[1] as usize, m[2] as usize]);
                s.c[i] += w * (*v.numer() as f64 / *v.denom() as f64);
            }
        }
        s
    }

    fn mul(&self, o: &Self) -> Self {
        let d = self.deg;
        let mut r = Self::zero(d);
        let nz: Vec<([usize; 3], f64)> = self.terms();
        let nz2: Vec<([usize; 3], f64)> = o.terms();
        for (a, x) in &nz {
            for (b, y) in &nz2 {
                let m = [a[0] + b[0], a[1] + b[1], a[2] + b[2]];
                if m.iter().all(|&e| e <= d) {
                    let i = r.idx(m);
                    r.c[i] += x * y;
                }
            }
        }
        r
    }

    fn terms(&self) -> Vec<([usize; 3], f64)> {
        let d = self.deg + 1;
        self.c
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0.0)
            .map(|(i, v)| ([i / (d * d), (i / d) % d, i % d], *v))
            .collect()
    }

    /// `exp(f)` for `f` without constant term.
    fn exp(&self) -> Self {
        let mut acc = Self::zero(self.deg);
        acc.c[0] = 1.0;
        let mut term = acc.clone();
        for k in 1..=3 * self.deg {
            term = term.mul(self);
            for v in term.c.iter_mut() {
                *v /= k as f64;
            }
            if term.c.iter().all(|v| *v == 0.0) {
                break;
            }
            for (a, t) in acc.c.iter_mut().zip(&term.c) {
                *a += t;
            }
        }
        acc
    }

    fn to_map(&self) -> BTreeMap<Monomial, f64> {
        self.terms().into_iter().map(|(m, v)| ([m[0] as u32, m[1] as u32, m[2] as u32], v)).collect()
    }
}

/// Mirror-map series by direct summation; `degree <= 12`.
pub fn mirror_maps(degree: u32) -> Result<MirrorSeries> {
    if degree > 12 {
        return Err(Error::InvalidInput("mirror-map degree is limited to 12".into()));
    }
    let a = [a2_series(degree), a3_series(degree), a4_series(degree)];
    let d = degree as usize;
    let exps = [
        Dense3::from_map(d, &[(&a[0], -2.0), (&a[1], 1.0)]),
        Dense3::from_map(d, &[(&a[0], 1.0), (&a[1], -2.0), (&a[2], 1.0)]),
        Dense3::from_map(d, &[(&a[2], -2.0)]),
    ];
    let q = [exps[0].exp().to_map(), exps[1].exp().to_map(), exps[2].exp().to_map()];
    Ok(MirrorSeries { degree, a, q })
}

impl MirrorSeries {
    /// Evaluates `A_k` (`k = 1..=4`) at `s`.
    pub fn eval_a(&self, k: usize, s: [Complex64; 3]) -> Complex64 {
        if k == 1 {
            return ZERO;
        }
        self.a[k - 2]
            .iter()
            .map(|(m, v)| s[0].powu(m[0]) * s[1].powu(m[1]) * s[2].powu(m[2]) * (*v.numer() as f64 / *v.denom() as f64))
            .sum()
    }

    /// Evaluates `Q_k` (`k = 1..=3`) at `s`.
    pub fn eval_q(&self, k: usize, s: [Complex64; 3]) -> Complex64 {
        let body: Complex64 = self.q[k - 1].iter().map(|(m, v)| s[0].powu(m[0]) * s[1].powu(m[1]) * s[2].powu(m[2]) * v).sum();
        s[k - 1] * body
    }
}

/// `d(j1, j2, j3)/d(q1, q2, q3)` by central differences.
pub fn invariants_jacobian(m: &MirrorModuli, step: f64) -> Result<[[Complex64; 3]; 3]> {
    let mut jac = [[ZERO; 3]; 3];
    for col in 0..3 {
        let mut plus = *m;
        let mut minus = *m;
        let h = Complex64::new(step, 0.0);
        match col {
            0 => {
                plus.q1 += h;
                minus.q1 -= h;
            }
            1 => {
                plus.q2 += h;
                minus.q2 -= h;
            }
            _ => {
                plus.q3 += h;
                minus.q3 -= h;
            }
        }
        let jp = absolute_invariants(&mirror_sextic(&plus)?)?;
        let jm = absolute_invariants(&mirror_sextic(&minus)?)?;
        let d = [jp.j1 - jm.j1, jp.j2 - jm.j2, jp.j3 - jm.j3];
        for row in 0..3 {
            jac[row][col] = d[row] / (2.0 * step);
        }
    }
    Ok(jac)
}

pub fn det3(m: &[[Complex64; 3]; 3]) -> Complex64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}
