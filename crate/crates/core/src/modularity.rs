//! The Sp4(Z) action on markings and period data, with numerical checks of
//! the transformation laws for periods, quasi-periods and `tau`.
//!
//! `gamma = (a, b; c, d)` acts on the column of cycles `(B1, B2, A1, A2)` by
//! left multiplication, so `Pi -> gamma Pi` and `tau -> (a tau + b)(c tau + d)^-1`.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::linalg::{det2, inv2};
use crate::numerics::{Matrix2C, Matrix4C};
use crate::periods::{IMat4, Marking, PeriodData};

/// `(0, -1; 1, 0)`.
pub const J: IMat4 = [[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0]];

fn imul(x: &IMat4, y: &IMat4) -> IMat4 {
    let mut out = [[0i64; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = (0..4).map(|k| x[i][k] * y[k][j]).sum();
        }
    }
    out
}

fn itranspose(x: &IMat4) -> IMat4 {
    let mut out = [[0i64; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = x[j][i];
        }
    }
    out
}

/// An element of Sp4(Z).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymplecticMatrix(IMat4);

impl SymplecticMatrix {
    pub fn new(m: IMat4) -> Result<Self> {
        if imul(&imul(&m, &J), &itranspose(&m)) != J {
            return Err(Error::InvalidInput(format!("{m:?} is not symplectic")));
        }
        Ok(Self(m))
    }

    pub fn identity() -> Self {
        Self([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    }

    /// `(0, -1; 1, 0)`.
    pub fn j() -> Self {
        Self(J)
    }

    /// `(1, s; 0, 1)` for symmetric `s`.
    pub fn translation(s: [[i64; 2]; 2]) -> Result<Self> {
        Self::new([[1, 0, s[0][0], s[0][1]], [0, 1, s[1][0], s[1][1]], [0, 0, 1, 0], [0, 0, 0, 1]])
    }

    /// `(1, 0; s, 1)` for symmetric `s`.
    pub fn lower_translation(s: [[i64; 2]; 2]) -> Result<Self> {
        Self::new([[1, 0, 0, 0], [0, 1, 0, 0], [s[0][0], s[0][1], 1, 0], [s[1][0], s[1][1], 0, 1]])
    }

    /// `(u, 0; 0, u^-t)` for `u` in GL2(Z).
    pub fn rotation(u: [[i64; 2]; 2]) -> Result<Self> {
        let det = u[0][0] * u[1][1] - u[0][1] * u[1][0];
        if det.abs() != 1 {
            return Err(Error::InvalidInput(format!("{u:?} is not unimodular")));
        }
        // u^-t = (1/det) (d, -c; -b, a).
        let w = [[u[1][1] * det, -u[1][0] * det], [-u[0][1] * det, u[0][0] * det]];
        Self::new([[u[0][0], u[0][1], 0, 0], [u[1][0], u[1][1], 0, 0], [0, 0, w[0][0], w[0][1]], [0, 0, w[1][0], w[1][1]]])
    }

    /// `J`, the elementary translations and their transposes, and one rotation.
    pub fn generators() -> Vec<Self> {
        let syms = [[[1, 0], [0, 0]], [[0, 0], [0, 1]], [[0, 1], [1, 0]]];
        let mut out = vec![Self::j()];
        for s in syms {
            out.push(Self::translation(s).expect("symmetric"));
            out.push(Self::lower_translation(s).expect("symmetric"));
        }
        out.push(Self::rotation([[1, 1], [0, 1]]).expect("unimodular"));
        out
    }

    /// A word of length `1..=max_len` in the generators and their inverses.
    pub fn random_word<R: Rng>(rng: &mut R, max_len: usize) -> Self {
        let gens = Self::generators();
        let len = rng.gen_range(1..=max_len.max(1));
        let mut g = Self::identity();
        for _ in 0..len {
            let h = gens[rng.gen_range(0..gens.len())];
            let h = if rng.gen_bool(0.5) { h.inverse() } else { h };
            g = g.mul(&h);
        }
        g
    }

    /// A word in the squares of the generators, which lies in the level-two subgroup.
    pub fn random_gamma2_word<R: Rng>(rng: &mut R, max_len: usize) -> Self {
        let gens = Self::generators();
        let len = rng.gen_range(1..=max_len.max(1));
        let mut g = Self::identity();
        for _ in 0..len {
            let h = gens[rng.gen_range(0..gens.len())];
            let h = if rng.gen_bool(0.5) { h.inverse() } else { h };
            g = g.mul(&h.mul(&h));
        }
        g
    }

    pub fn matrix(&self) -> &IMat4 {
        &self.0
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self(imul(&self.0, &o.0))
    }

    /// `-J gamma^t J`.
    pub fn inverse(&self) -> Self {
        let m = imul(&imul(&J, &itranspose(&self.0)), &J);
        Self(m.map(|r| r.map(|v| -v)))
    }

    pub fn transpose(&self) -> Self {
        Self(itranspose(&self.0))
    }

    /// Blocks `(a, b, c, d)`.
    pub fn blocks(&self) -> [Matrix2C; 4] {
        let m = &self.0;
        let blk = |r: usize, s: usize| {
            let f = |i: usize, j: usize| Complex64::new(m[r + i][s + j] as f64, 0.0);
            Matrix2C::new(f(0, 0), f(0, 1), f(1, 0), f(1, 1))
        };
        [blk(0, 0), blk(0, 2), blk(2, 0), blk(2, 2)]
    }

    /// `gamma = 1 mod 2`.
    pub fn is_gamma2(&self) -> bool {
        (0..4).all(|i| (0..4).all(|j| (self.0[i][j] - i64::from(i == j)).rem_euclid(2) == 0))
    }
}

/// `(a tau + b)(c tau + d)^-1`.
pub fn act_on_tau(g: &SymplecticMatrix, tau: &Matrix2C) -> Result<Matrix2C> {
    let [a, b, c, d] = g.blocks();
    let den = c * tau + d;
    if det2(&den).norm() < 1e-12 * (1.0 + den.norm() * den.norm()) {
        return Err(Error::SingularDenominator);
    }
    Ok((a * tau + b) * inv2(&den)?)
}

pub fn act_on_marking(g: &SymplecticMatrix, m: &Marking) -> Marking {
    m.act(g.matrix())
}

/// Periods recomputed for the marking `gamma` applied to the marking of `pd`.
pub fn act_on_periods(g: &SymplecticMatrix, pd: &PeriodData) -> Result<PeriodData> {
    pd.act(g.matrix())
}

/// Outcome of one transformation-law check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransformReport {
    pub law: String,
    pub gamma: IMat4,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl TransformReport {
    fn new(law: &str, g: &SymplecticMatrix, residual: f64, tolerance: f64) -> Self {
        Self { law: law.into(), gamma: *g.matrix(), residual, tolerance, pass: residual < tolerance }
    }
}

pub const LAW_TOLERANCE: f64 = 1e-6;

fn rel(x: &Matrix2C, y: &Matrix2C) -> f64 {
    (x - y).norm() / y.norm().max(1e-300)
}

fn two_pi_i() -> Complex64 {
    Complex64::new(0.0, 2.0 * std::f64::consts::PI)
}

/// Recomputed `tau` against `(a tau + b)(c tau + d)^-1`.
pub fn verify_tau_action(pd: &PeriodData, g: &SymplecticMatrix) -> Result<TransformReport> {
    let new = act_on_periods(g, pd)?;
    let pred = act_on_tau(g, &pd.tau)?;
    Ok(TransformReport::new("tau action", g, rel(&new.tau, &pred), LAW_TOLERANCE))
}

/// Recomputed periods (forms by cycles) against `Pi (d^t, b^t; c^t, a^t)`.
pub fn verify_period_blocks(pd: &PeriodData, g: &SymplecticMatrix) -> Result<TransformReport> {
    let new = act_on_periods(g, pd)?;
    let [a, b, c, d] = g.blocks();
    let mut m = Matrix4C::zeros();
    m.fixed_view_mut::<2, 2>(0, 0).copy_from(&d.transpose());
    m.fixed_view_mut::<2, 2>(0, 2).copy_from(&b.transpose());
    m.fixed_view_mut::<2, 2>(2, 0).copy_from(&c.transpose());
    m.fixed_view_mut::<2, 2>(2, 2).copy_from(&a.transpose());
    let pred = pd.forms_by_cycles() * m;
    let got = new.forms_by_cycles();
    let res = (got - pred).norm() / pred.norm();
    Ok(TransformReport::new("period block law", g, res, LAW_TOLERANCE))
}

/// `kappa -> kappa + Pi_A^-1 (c tau + d)^-1 2 pi i c Pi_A^-t`.
pub fn verify_quasi_period_law(pd: &PeriodData, g: &SymplecticMatrix) -> Result<TransformReport> {
    let new = act_on_periods(g, pd)?;
    let [_, _, c, d] = g.blocks();
    let pa = inv2(&pd.pi_a_omega())?;
    let shift = pa * inv2(&(c * pd.tau + d))? * c * pa.transpose() * two_pi_i();
    let pred = pd.kappa() + shift;
    Ok(TransformReport::new("quasi-period law", g, rel(&new.kappa(), &pred), LAW_TOLERANCE))
}

/// `kappa + Y` is unchanged.
pub fn verify_completed_invariance(pd: &PeriodData, g: &SymplecticMatrix) -> Result<TransformReport> {
    let new = act_on_periods(g, pd)?;
    let before = pd.kappa() + pd.nonholomorphic_y();
    let after = new.kappa() + new.nonholomorphic_y();
    Ok(TransformReport::new("completed invariance", g, rel(&after, &before), LAW_TOLERANCE))
}

/// `(g tau - conj g tau)^-1` in both closed forms, and the induced shift of
/// `Pi_A^-1 (tau - conj tau)^-1 Pi_A^-t` against recomputed periods.
pub fn verify_imaginary_part_law(pd: &PeriodData, g: &SymplecticMatrix) -> Result<TransformReport> {
    let tau = pd.tau;
    let tb = tau.map(|z| z.conj());
    let [_, _, c, d] = g.blocks();
    let gt = act_on_tau(g, &tau)?;
    let lhs = inv2(&(gt - gt.map(|z| z.conj())))?;
    let diff_inv = inv2(&(tau - tb))?;
    let ct = c * tau + d;
    let rhs1 = (c * tb + d) * diff_inv * ct.transpose();
    let rhs2 = ct * diff_inv * ct.transpose() - c * ct.transpose();
    let new = act_on_periods(g, pd)?;
    let inner = |p: &PeriodData| -> Result<Matrix2C> {
        let pa = inv2(&p.pi_a_omega())?;
        Ok(pa * inv2(&(p.tau - p.tau.map(|z| z.conj())))? * pa.transpose())
    };
    let pa = inv2(&pd.pi_a_omega())?;
    let pred = inner(pd)? - pa * inv2(&ct)? * c * pa.transpose();
    let res = rel(&lhs, &rhs1).max(rel(&lhs, &rhs2)).max(rel(&inner(&new)?, &pred));
    Ok(TransformReport::new("imaginary-part law", g, res, LAW_TOLERANCE))
}

/// Coordinates of `eta` in the frame `(e, beta)` with `e = beta tau + alpha`:
/// `f0 = Pi_A(eta)`, `f1 = Pi_B(eta) - tau Pi_A(eta)`.
pub fn weight_frame_coordinates(pd: &PeriodData) -> (Matrix2C, Matrix2C) {
    let f0 = pd.pi_a_eta();
    (f0, pd.pi_b_eta() - pd.tau * f0)
}

/// Weight one, order one: `f0 = (c tau + d)^-1 f0' - c^t f1'` and `f1 = (c tau + d)^t f1'`,
/// primes denoting the coordinates for the transformed marking.
pub fn verify_order1_quasi_modular(pd: &PeriodData, g: &SymplecticMatrix) -> Result<TransformReport> {
    let new = act_on_periods(g, pd)?;
    let [_, _, c, d] = g.blocks();
    let ct = c * pd.tau + d;
    let (f0, f1) = weight_frame_coordinates(pd);
    let (n0, n1) = weight_frame_coordinates(&new);
    let p0 = inv2(&ct)? * n0 - c.transpose() * n1;
    let p1 = ct.transpose() * n1;
    let scale = f0.norm() + f1.norm();
    let res = ((f0 - p0).norm() + (f1 - p1).norm()) / scale;
    Ok(TransformReport::new("order-one quasi-modular law", g, res, LAW_TOLERANCE))
}

/// The five transformation laws for one marking change.
pub fn transformation_suite(pd: &PeriodData, g: &SymplecticMatrix) -> Result<Vec<TransformReport>> {
    Ok(vec![
        verify_quasi_period_law(pd, g)?,
        verify_completed_invariance(pd, g)?,
        verify_period_blocks(pd, g)?,
        verify_tau_action(pd, g)?,
        verify_imaginary_part_law(pd, g)?,
    ])
}

/// `det(c tau + d)`.
pub fn automorphy_factor(g: &SymplecticMatrix, tau: &Matrix2C) -> Complex64 {
    let [_, _, c, d] = g.blocks();
    det2(&(c * tau + d))
}
