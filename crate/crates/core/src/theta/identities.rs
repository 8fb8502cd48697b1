//! Identities tying theta constants to branch points and periods.
//!
//! Characteristics of branch points are read off numerically from the
//! Abel-Jacobi images, so every formula here works for the marking at hand.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{theta, theta_constants, ThetaCharacteristic};
use crate::curve::Model;
use crate::error::{Error, Result};
use crate::jacobian::{theta_divisor, ThetaDivisorData};
use crate::numerics::linalg::{det2, inv2};
use crate::numerics::{Matrix2C, Vector2C};
use crate::periods::PeriodData;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Branch-point characteristics for a marked curve.
#[derive(Clone, Debug)]
pub struct CharacteristicDictionary {
    /// Odd characteristic whose theta function vanishes on the embedded curve.
    pub delta: ThetaCharacteristic,
    /// `phi(e_k)` as unreduced half-integer characteristics, in root order.
    pub half_periods: Vec<ThetaCharacteristic>,
}

fn shift(x: &ThetaCharacteristic, y: &ThetaCharacteristic, s: f64) -> ThetaCharacteristic {
    ThetaCharacteristic::new([x.a[0] + s * y.a[0], x.a[1] + s * y.a[1]], [x.b[0] + s * y.b[0], x.b[1] + s * y.b[1]])
}

impl CharacteristicDictionary {
    pub fn from_divisor(td: &ThetaDivisorData) -> Self {
        Self { delta: td.delta, half_periods: td.branch_half_periods.clone() }
    }

    pub fn compute(pd: &PeriodData) -> Result<Self> {
        Ok(Self::from_divisor(&theta_divisor(pd)?))
    }

    /// `phi(e_k) - delta`.
    pub fn single(&self, k: usize) -> ThetaCharacteristic {
        shift(&self.half_periods[k], &self.delta, -1.0)
    }

    /// `(phi(e_k) - delta) + (phi(e_l) - delta) + delta`.
    pub fn pair(&self, k: usize, l: usize) -> ThetaCharacteristic {
        shift(&shift(&self.half_periods[k], &self.half_periods[l], 1.0), &self.delta, -1.0)
    }
}

/// Both sides of the discriminant identity for a monic quintic.
#[derive(Clone, Debug)]
pub struct ThomaeCheck {
    /// `prod_{k<l} (e_k - e_l)^2`.
    pub discriminant: Complex64,
    /// `(det Pi_A(omega) / pi^2)^-10 prod_even theta^2`.
    pub theta_side: Complex64,
    /// `det(Pi_A(omega) / pi^2)^-10 prod_even theta^2`, with the matrix scaled entrywise.
    pub entrywise_theta_side: Complex64,
    /// The sign `s` with `discriminant = s * theta_side`.
    pub sign: i8,
    pub rel_err: f64,
    pub entrywise_rel_err: f64,
}

fn require_monic_odd(pd: &PeriodData) -> Result<()> {
    let c = &pd.curve;
    match c.model() {
        Model::Sextic => Err(Error::ModelMismatch("odd-degree model required".into())),
        _ if (c.leading() - ONE).norm() > 1e-12 => Err(Error::ModelMismatch("leading coefficient must be 1".into())),
        _ => Ok(()),
    }
}

pub fn thomae_check(pd: &PeriodData) -> Result<ThomaeCheck> {
    require_monic_odd(pd)?;
    let e = pd.curve.roots();
    let mut disc = ONE;
    for k in 0..e.len() {
        for l in k + 1..e.len() {
            disc *= (e[k] - e[l]) * (e[k] - e[l]);
        }
    }
    let mut th = ONE;
    for (_, t) in theta_constants(&pd.tau)? {
        th *= t * t;
    }
    let d = det2(&pd.pi_a_omega());
    let theta_side = (d / (PI * PI)).powi(-10) * th;
    let entrywise = (d / PI.powi(4)).powi(-10) * th;
    let r = disc / theta_side;
    let sign: i8 = if r.re >= 0.0 { 1 } else { -1 };
    let rel = |x: Complex64| (disc - x).norm() / disc.norm();
    Ok(ThomaeCheck {
        discriminant: disc,
        theta_side,
        entrywise_theta_side: entrywise,
        sign,
        rel_err: rel(theta_side * sign as f64),
        entrywise_rel_err: rel(entrywise * sign as f64).min(rel(-entrywise * sign as f64)),
    })
}

/// `Pi_A(omega)^-1 Pi_A(eta)` from theta constants for a sextic with `a0 = 1`.
/// The base branch point is the first root; pairs run over the other five.
pub fn quasi_period_theta(pd: &PeriodData, dict: &CharacteristicDictionary) -> Result<Matrix2C> {
    let c = &pd.curve;
    if c.model() != Model::Sextic || (c.leading() - ONE).norm() > 1e-12 {
        return Err(Error::ModelMismatch("sextic with a0 = 1 required".into()));
    }
    let a = c.sextic_form();
    let m = inv2(&pd.pi_a_omega())?;
    let zero = Vector2C::zeros();
    let mut sum = Matrix2C::zeros();
    for i in 1..6 {
        for j in i + 1..6 {
            let ch = dict.pair(i, j);
            if !ch.reduced().is_even() {
                return Err(Error::CharacteristicResolutionFailed(format!("pair ({i}, {j}) gives an odd characteristic")));
            }
            let t = theta(&ch, &zero, &pd.tau, 2)?;
            sum += m * t.hessian * m.transpose() / t.value;
        }
    }
    let k = Matrix2C::new(a[4] * 4.0, a[3], a[3], a[2] * 4.0);
    Ok((sum - k) / Complex64::new(10.0, 0.0))
}

/// `Pi_A(omega)` of a monic quintic from theta gradients and constants.
#[derive(Clone, Debug)]
pub struct PeriodTheta {
    /// The product exactly as displayed: gradient columns `(theta_l, theta_k)`,
    /// scaling `diag(1/theta_pl theta_ql theta_rl, 1/theta_pk theta_qk theta_rk)`
    /// and right factor `((1, -e_l), (-1, e_k))`.
    pub displayed: Matrix2C,
    /// Columns `(theta_k, theta_l)`, matching scaling and right factor
    /// `((1, e_l), (-1, -e_k))`, before sign resolution.
    pub arranged: Matrix2C,
    /// `unit * arranged * diag(1, relative_sign)`-type resolution matched to quadrature.
    pub resolved: Matrix2C,
    pub unit: Complex64,
    pub relative_sign: i8,
    /// `|resolved - Pi_A(omega)| / |Pi_A(omega)|`.
    pub residual: f64,
    /// Same for `displayed` against `Pi_A(omega)`, best unit.
    pub displayed_residual: f64,
}

/// `choice = (k, l, p, q, r)`, a permutation of the root indices `0..5`.
pub fn period_theta(pd: &PeriodData, dict: &CharacteristicDictionary, choice: [usize; 5]) -> Result<PeriodTheta> {
    require_monic_odd(pd)?;
    let mut seen = [false; 5];
    for &i in &choice {
        if i >= 5 || seen[i] {
            return Err(Error::InvalidInput(format!("{choice:?} is not a permutation of 0..5")));
        }
        seen[i] = true;
    }
    let [k, l, p, q, r] = choice;
    let e = pd.curve.roots();
    let zero = Vector2C::zeros();
    let t1 = |i: usize| theta(&dict.single(i), &zero, &pd.tau, 1).map(|t| t.gradient);
    let t2 = |i: usize, j: usize| theta(&dict.pair(i, j), &zero, &pd.tau, 0).map(|t| t.value);
    let gk = t1(k)?;
    let gl = t1(l)?;
    let pre = t2(p, q)? * t2(p, r)? * t2(q, r)? / (t2(k, l)? * (e[k] - e[l]).powf(1.5));
    let sl = ONE / (t2(p, l)? * t2(q, l)? * t2(r, l)?);
    let sk = ONE / (t2(p, k)? * t2(q, k)? * t2(r, k)?);
    let displayed = Matrix2C::new(gl[0], gk[0], gl[1], gk[1])
        * Matrix2C::new(sl, ZERO, ZERO, sk)
        * Matrix2C::new(ONE, -e[l], -ONE, e[k])
        * pre;
    let g = Matrix2C::new(gk[0], gl[0], gk[1], gl[1]);
    let right = Matrix2C::new(ONE, e[l], -ONE, -e[k]);
    let arranged = g * Matrix2C::new(sk, ZERO, ZERO, sl) * right * pre;
    let target = pd.pi_a_omega();
    let scale = target.norm();
    let units = [ONE, Complex64::new(0.0, 1.0), -ONE, Complex64::new(0.0, -1.0)];
    let mut best = (f64::INFINITY, ONE, 1i8, arranged);
    for s in [1i8, -1] {
        let cand = g * Matrix2C::new(sk, ZERO, ZERO, sl * s as f64) * right * pre;
        for u in units {
            let res = (cand * u - target).norm() / scale;
            if res < best.0 {
                best = (res, u, s, cand * u);
            }
        }
    }
    let displayed_residual = units.iter().map(|u| (displayed * *u - target).norm() / scale).fold(f64::INFINITY, f64::min);
    Ok(PeriodTheta {
        displayed,
        arranged,
        resolved: best.3,
        unit: best.1,
        relative_sign: best.2,
        residual: best.0,
        displayed_residual,
    })
}
