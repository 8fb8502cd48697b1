//! The genus-one free energy in its defining, sextic, quintic and theta forms.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::curve::{rosenhain_shifts, sextic_to_quintic, HyperellipticCurve, Model};
use crate::error::{Error, Result};
use crate::numerics::linalg::det2;
use crate::numerics::Matrix2C;
use crate::periods::PeriodData;
use crate::theta::{cusp_forms, theta_constants, ThetaCharacteristic};

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Labels cubed in the theta form as printed.
pub const LITERAL_CUBED: [[u8; 4]; 3] = [[0, 1, 1, 0], [1, 0, 0, 0], [0, 0, 1, 1]];

/// Evaluations of `F1` in several equivalent forms for one curve.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FormSet {
    /// `-1/2 log tau_B - 1/12 log prod dY/d(X - r)^(1/2) + 1/2 ln det(Im tau)^-1`
    /// with `tau_B = 4 det Pi_A prod_{i<j} (r_i - r_j)^(1/4)`.
    pub defining: Complex64,
    /// `-1/2 log det Pi_A - 5/24 log prod_{i<j} (r_i - r_j) - 1/4 log(16 a0) + 1/2 ln det(Im tau)^-1`.
    pub sextic: Complex64,
    /// Quintic model with `b0 = 1` sending `(r0, r2, r4)` to `(infinity, 0, 1)`.
    pub quintic: Complex64,
    /// Theta form with the cubed characteristics calibrated to the marking.
    pub theta: Complex64,
    /// Theta form with the printed labels.
    pub theta_literal: Complex64,
    pub cubed_labels: [String; 3],
    /// `u` with `(det Pi5_A)^-1 = -u/pi^2 prod_7 theta / prod_3 theta^3`.
    pub rosenhain_unit: Complex64,
    /// Same ratio for the printed labels.
    pub rosenhain_unit_literal: Complex64,
}

/// `F1` on the curve as given and after scaling the roots so that `a0 = 1`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GenusOneForms {
    pub as_given: FormSet,
    /// Forms for `X = mu X'`, `mu^6 = 1/a0`, with periods transported.
    pub monic: FormSet,
    pub root_scale: Complex64,
    /// `as_given.defining - monic.defining`.
    pub a0_shift: Complex64,
}

/// `Pi_A` of the quintic model, transported from the sextic through the coordinate change.
pub fn quintic_pi_a(curve: &HyperellipticCurve, pi_a: &Matrix2C) -> Result<(Matrix2C, Vec<Complex64>)> {
    let r = curve.roots();
    let (c1, c2) = rosenhain_shifts(r[0], r[2], r[4]);
    let (q, map) = sextic_to_quintic(curve, c1, c2, ONE)?;
    let d = c2 - c1;
    let m = Matrix2C::new(r[0], -c1 * r[0], -ONE, c2) * (map.y_scale / (r[0] * r[0] * d * d));
    Ok((pi_a * m, q.roots().to_vec()))
}

fn evens_product(th: &[(ThetaCharacteristic, Complex64)], cubed: &[[u8; 4]; 3]) -> (Complex64, Complex64) {
    let mut num = ONE;
    let mut den = ONE;
    for (c, t) in th {
        if cubed.iter().any(|b| c.bits() == Some(*b)) {
            den *= t * t * t;
        } else {
            num *= t;
        }
    }
    (num, den)
}

fn choose3(n: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                out.push([i, j, k]);
            }
        }
    }
    out
}

/// All forms for a sextic with A-periods `pi_a` and period matrix `tau`.
pub fn forms(curve: &HyperellipticCurve, pi_a: &Matrix2C, tau: &Matrix2C) -> Result<FormSet> {
    if curve.model() != Model::Sextic {
        return Err(Error::ModelMismatch("genus-one forms need a sextic".into()));
    }
    let r = curve.roots();
    let a0 = curve.leading();
    let mut disc = ONE;
    for i in 0..6 {
        for j in i + 1..6 {
            disc *= r[i] - r[j];
        }
    }
    if disc.norm() == 0.0 {
        return Err(Error::DegenerateDiscriminant);
    }
    let det_pi = det2(pi_a);
    let im_term = Complex64::new(-0.5 * tau.map(|z| z.im).determinant().ln(), 0.0);
    let fp = curve.poly().derivative();
    let ram: Complex64 = r.iter().map(|x| fp.eval(*x).ln() * 0.5).sum();
    let log_tau_b = Complex64::new(4.0, 0.0).ln() + det_pi.ln() + disc.ln() * 0.25;
    let defining = -log_tau_b * 0.5 - ram / 12.0 + im_term;
    let sextic = -det_pi.ln() * 0.5 - disc.ln() * (5.0 / 24.0) - (a0 * 16.0).ln() * 0.25 + im_term;

    let (pi5, e) = quintic_pi_a(curve, pi_a)?;
    let mut disc5 = ONE;
    for i in 0..5 {
        for j in i + 1..5 {
            disc5 *= e[j] - e[i];
        }
    }
    let (c1, c2) = rosenhain_shifts(r[0], r[2], r[4]);
    let mut p0 = ONE;
    for rk in &r[1..] {
        p0 *= r[0] - rk;
    }
    let cross = r[0] * r[0] * (c1 - c2) * (c1 - c2) / p0;
    let det5 = det2(&pi5);
    let quintic = -det5.ln() * 0.5 - disc5.ln() * (5.0 / 24.0) + im_term - (a0 * 16.0).ln() * 0.25 + cross.ln() * (13.0 / 24.0);

    let th = theta_constants(tau)?;
    let chi10 = cusp_forms(tau)?.chi10;
    let tail = -a0.ln() * 0.25
        + ((r[0] - r[2]).powi(2) * (r[0] - r[4]).powi(2) / (r[2] - r[4]).powi(2) / p0).ln() * (13.0 / 24.0);
    let theta_form = |cubed: &[[u8; 4]; 3]| {
        let (num, den) = evens_product(&th, cubed);
        let unit = (ONE / det5) / (-(num / den) / (PI * PI));
        ((den / num).ln() * (13.0 / 24.0) - chi10.ln() * (5.0 / 48.0) + im_term + tail, unit)
    };
    let evens: Vec<[u8; 4]> = th.iter().map(|(c, _)| c.bits().expect("level two")).collect();
    let mut best: Option<([[u8; 4]; 3], f64)> = None;
    for [i, j, k] in choose3(evens.len()) {
        let cubed = [evens[i], evens[j], evens[k]];
        let dev = (theta_form(&cubed).1.norm() - 1.0).abs();
        if best.map_or(true, |(_, d)| dev < d) {
            best = Some((cubed, dev));
        }
    }
    let (cubed, _) = best.expect("ten even characteristics");
    let (theta, rosenhain_unit) = theta_form(&cubed);
    let (theta_literal, rosenhain_unit_literal) = theta_form(&LITERAL_CUBED);
    Ok(FormSet {
        defining,
        sextic,
        quintic,
        theta,
        theta_literal,
        cubed_labels: cubed.map(|b| ThetaCharacteristic::from_bits(b).label()),
        rosenhain_unit,
        rosenhain_unit_literal,
    })
}

pub fn f1(pd: &PeriodData) -> Result<GenusOneForms> {
    let curve = &pd.curve;
    if curve.model() != Model::Sextic {
        return Err(Error::ModelMismatch("genus-one forms need a sextic".into()));
    }
    let pi_a = pd.pi_a_omega();
    let as_given = forms(curve, &pi_a, &pd.tau)?;
    let mu = curve.leading().powf(-1.0 / 6.0);
    let roots: Vec<Complex64> = curve.roots().iter().map(|r| r / mu).collect();
    let scaled = HyperellipticCurve::sextic_from_roots(ONE, &roots)?;
    // dX'/Y' = dX/(mu Y) and X' dX'/Y' = X dX/(mu^2 Y).
    let pi_scaled = pi_a * Matrix2C::new(ONE / mu, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), ONE / (mu * mu));
    let monic = forms(&scaled, &pi_scaled, &pd.tau)?;
    let a0_shift = as_given.defining - monic.defining;
    Ok(GenusOneForms { as_given, monic, root_scale: mu, a0_shift })
}
