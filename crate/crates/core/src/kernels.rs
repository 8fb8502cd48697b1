//! Bergman and Schiffer kernels and their local expansions at branch points.
//!
//! Values are reported against `dx1/2y1 dx2/2y2`. The algebraic form is
//! `(G6(x1, x2) + 2 y1 y2)/(x1 - x2)^2 - (1, x1) K (1, x2)^t` with `K` the
//! quasi-period term: `Pi_A(omega)^-1 Pi_A(eta)` for Bergman, plus the
//! non-holomorphic correction `Y` for Schiffer.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::curve::HyperellipticCurve;
use crate::error::{Error, Result};
use crate::jacobian::{abel_jacobi_u, wp, CurvePoint};
use crate::numerics::linalg::inv2;
use crate::numerics::{BiSeries, LaurentSeries, Matrix2C, Vector2C};
use crate::periods::PeriodData;
use crate::theta::{theta, ThetaCharacteristic};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum KernelChoice {
    Bergman,
    Schiffer,
}

/// A bidifferential at a pair of points.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BidifferentialValue {
    /// Coefficient matrix `M` of `du(p)^t M du(q)`. For the algebraic form
    /// this is the representative `R e11 - K` with `R` the rational part.
    pub matrix_part: Matrix2C,
    /// `(1, x1) M (1, x2)^t`, the value against `dx1/2y1 dx2/2y2`.
    pub scalar_part: Complex64,
}

impl BidifferentialValue {
    fn from_matrix(m: Matrix2C, x1: Complex64, x2: Complex64) -> Self {
        let s = m[(0, 0)] + m[(0, 1)] * x2 + m[(1, 0)] * x1 + m[(1, 1)] * x1 * x2;
        Self { matrix_part: m, scalar_part: s }
    }
}

/// `K` for the chosen kernel.
pub fn quasi_period_term(pd: &PeriodData, choice: KernelChoice) -> Matrix2C {
    match choice {
        KernelChoice::Bergman => pd.kappa(),
        KernelChoice::Schiffer => pd.kappa() + pd.nonholomorphic_y(),
    }
}

/// Coefficients `g[i][j]` of `x1^i x2^j` in `G6`, from the sextic form `a0..a6`.
pub fn g6_coefficients(a: &[Complex64; 7]) -> Vec<Vec<Complex64>> {
    let mut g = vec![vec![ZERO; 4]; 4];
    g[3][3] = a[0] * 2.0;
    for i in 0..3 {
        g[i][i] += a[6 - 2 * i] * 2.0;
        g[i + 1][i] += a[5 - 2 * i];
        g[i][i + 1] += a[5 - 2 * i];
    }
    g
}

pub fn g6(a: &[Complex64; 7], x1: Complex64, x2: Complex64) -> Complex64 {
    let g = g6_coefficients(a);
    let mut acc = ZERO;
    for (i, row) in g.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            acc += c * x1.powu(i as u32) * x2.powu(j as u32);
        }
    }
    acc
}

fn finite(p: &CurvePoint) -> Result<(Complex64, Complex64)> {
    match p {
        CurvePoint::Finite { x, y } => Ok((*x, *y)),
        CurvePoint::Infinity => Err(Error::InvalidInput("finite points required".into())),
    }
}

/// Algebraic form with an explicit quasi-period term.
pub fn bergman_algebraic_with(p: &CurvePoint, q: &CurvePoint, curve: &HyperellipticCurve, quasi: &Matrix2C) -> Result<BidifferentialValue> {
    let (x1, y1) = finite(p)?;
    let (x2, y2) = finite(q)?;
    let d = x1 - x2;
    if d.norm() < 1e-13 * (1.0 + x1.norm()) {
        return Err(Error::CoincidentX);
    }
    let r = (g6(&curve.sextic_form(), x1, x2) + y1 * y2 * 2.0) / (d * d);
    let m = Matrix2C::new(r, ZERO, ZERO, ZERO) - quasi;
    Ok(BidifferentialValue::from_matrix(m, x1, x2))
}

pub fn bergman_algebraic(p: &CurvePoint, q: &CurvePoint, pd: &PeriodData) -> Result<BidifferentialValue> {
    bergman_algebraic_with(p, q, &pd.curve, &pd.kappa())
}

pub fn schiffer(p: &CurvePoint, q: &CurvePoint, pd: &PeriodData) -> Result<BidifferentialValue> {
    bergman_algebraic_with(p, q, &pd.curve, &quasi_period_term(pd, KernelChoice::Schiffer))
}

fn u_difference(p: &CurvePoint, q: &CurvePoint, pd: &PeriodData) -> Result<Vector2C> {
    if p == q {
        return Err(Error::CoincidentPoints);
    }
    Ok(abel_jacobi_u(&pd.curve, p)? - abel_jacobi_u(&pd.curve, q)?)
}

/// `d_p d_q log theta[delta](phi(p) - phi(q))`; any non-singular odd `delta` works.
pub fn bergman_theta(p: &CurvePoint, q: &CurvePoint, pd: &PeriodData, delta: &ThetaCharacteristic) -> Result<BidifferentialValue> {
    let (x1, _) = finite(p)?;
    let (x2, _) = finite(q)?;
    let du = u_difference(p, q, pd)?;
    let m = inv2(&pd.pi_a_omega())?;
    let th = theta(delta, &(m.transpose() * du), &pd.tau, 2)?;
    if th.value.norm() < 1e-12 * th.gradient.norm().max(1e-300) {
        return Err(Error::OnThetaDivisor);
    }
    let mat = -(m * th.log_hessian() * m.transpose());
    Ok(BidifferentialValue::from_matrix(mat, x1, x2))
}

/// `wp(u(p) - u(q)) - K`.
pub fn bergman_wp(p: &CurvePoint, q: &CurvePoint, pd: &PeriodData, delta: &ThetaCharacteristic, choice: KernelChoice) -> Result<BidifferentialValue> {
    let (x1, _) = finite(p)?;
    let (x2, _) = finite(q)?;
    let du = u_difference(p, q, pd)?;
    let w = wp(&du, pd, delta)?;
    Ok(BidifferentialValue::from_matrix(w.wp2 - quasi_period_term(pd, choice), x1, x2))
}

/// Local data at a finite branch point `r`: `x = r + rho z^2`, `y = z s(z)`.
#[derive(Clone, Debug)]
pub struct LocalChart {
    pub r: Complex64,
    pub rho: Complex64,
    /// Even power series `s(z)` with `s(z)^2 = f(r + rho z^2)/z^2`.
    pub s: LaurentSeries,
}

impl LocalChart {
    pub fn new(curve: &HyperellipticCurve, index: usize, order: usize) -> Result<Self> {
        let roots = curve.roots();
        let r = roots[index];
        let dist = roots
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != index)
            .map(|(_, e)| (e - r).norm())
            .fold(f64::INFINITY, f64::min);
        let rho = Complex64::new(0.5 * dist, 0.0);
        let taylor = curve.poly().taylor_at(r);
        if taylor[1].norm() < 1e-10 * taylor.iter().map(|c| c.norm()).fold(0.0, f64::max) {
            return Err(Error::NonSimpleRamification);
        }
        let mut sq = vec![ZERO; order + 2];
        for (j, c) in taylor.iter().enumerate().skip(1) {
            let k = 2 * j - 2;
            if k < sq.len() {
                sq[k] = c * rho.powu(j as u32);
            }
        }
        let s = LaurentSeries::from_taylor(sq).sqrt()?;
        Ok(Self { r, rho, s })
    }

    pub fn x_series(&self, order: usize) -> LaurentSeries {
        let mut c = vec![ZERO; order.max(3)];
        c[0] = self.r;
        c[2] = self.rho;
        LaurentSeries::from_taylor(c).truncate(order as i32)
    }

    /// `y = z s(z)`.
    pub fn y_series(&self) -> LaurentSeries {
        self.s.shift(1)
    }

    /// Local coordinate of a point near the branch point: `z^2 = (x - r)/rho`,
    /// sign fixed by `y`.
    pub fn coordinate(&self, x: Complex64, y: Complex64) -> Complex64 {
        let z = ((x - self.r) / self.rho).sqrt();
        if (z * self.s.eval(z) * y.conj()).re >= 0.0 {
            z
        } else {
            -z
        }
    }
}

fn substitute_squares(b: &BiSeries, ra: Complex64, rb: Complex64, deg: usize) -> BiSeries {
    let mut out = BiSeries::zero(deg);
    for i in 0..b.deg() {
        for j in 0..b.deg() - i {
            if 2 * i + 2 * j < deg {
                out.set(2 * i, 2 * j, b.get(i, j) * ra.powu(i as u32) * rb.powu(j as u32));
            }
        }
    }
    out
}

fn flip_second(b: &BiSeries) -> BiSeries {
    let mut out = b.clone();
    for i in 0..b.deg() {
        for j in (1..b.deg() - i).step_by(2) {
            out.set(i, j, -b.get(i, j));
        }
    }
    out
}

fn coeffs_upto(s: &LaurentSeries, n: usize) -> Vec<Complex64> {
    (0..n as i32).map(|k| s.coeff(k).unwrap_or(ZERO)).collect()
}

/// Expansion of a kernel in the charts of all six branch points of a sextic.
///
/// `regular[a][b]` holds `beta_ij` with
/// `B(z_a, w_b) = (delta_ab/(z - w)^2 + sum beta_ij z^i w^j) dz dw`.
#[derive(Clone, Debug)]
pub struct KernelExpansion {
    pub charts: Vec<LocalChart>,
    pub regular: Vec<Vec<BiSeries>>,
    pub quasi: Matrix2C,
    pub deg: usize,
    /// Largest residue seen in the exact divisions on the diagonal.
    pub division_residual: f64,
    a: [Complex64; 7],
}

impl KernelExpansion {
    pub fn new(curve: &HyperellipticCurve, quasi: Matrix2C, deg: usize) -> Result<Self> {
        let n = curve.roots().len();
        if n != 6 {
            return Err(Error::ModelMismatch("local kernel expansions need six finite branch points".into()));
        }
        let work = deg + 6;
        let charts: Vec<LocalChart> = (0..n).map(|k| LocalChart::new(curve, k, work)).collect::<Result<_>>()?;
        let a = curve.sextic_form();
        let g = g6_coefficients(&a);
        let mut regular = vec![vec![BiSeries::zero(deg); n]; n];
        let mut residual: f64 = 0.0;
        let half = work / 2 + 2;
        for ia in 0..n {
            for ib in ia..n {
                let (ca, cb) = (&charts[ia], &charts[ib]);
                let inv_s = BiSeries::from_first(&coeffs_upto(&ca.s.invert()?, work), work)
                    .mul(&BiSeries::from_second(&coeffs_upto(&cb.s.invert()?, work), work));
                let x1 = BiSeries::from_first(&coeffs_upto(&ca.x_series(work), work), work);
                let x2 = BiSeries::from_second(&coeffs_upto(&cb.x_series(work), work), work);
                let quasi_part = BiSeries::constant(quasi[(0, 0)], work)
                    .add(&x2.scale(quasi[(0, 1)]))
                    .add(&x1.scale(quasi[(1, 0)]))
                    .add(&x1.mul(&x2).scale(quasi[(1, 1)]));
                let g_loc = substitute_squares(&BiSeries::from_bipoly(&g, ca.r, cb.r, half), ca.rho, cb.rho, work);
                let yy = BiSeries::from_first(&coeffs_upto(&ca.y_series(), work), work)
                    .mul(&BiSeries::from_second(&coeffs_upto(&cb.y_series(), work), work))
                    .scale(Complex64::new(2.0, 0.0));
                let scale = ca.rho * cb.rho;
                let reg = if ia != ib {
                    let diff = x1.sub(&x2);
                    let inv_d2 = diff.mul(&diff).invert()?;
                    g_loc.add(&yy).mul(&inv_d2).sub(&quasi_part).mul(&inv_s).scale(scale)
                } else {
                    // (x1 - x2)^2 = rho^2 (z - w)^2 (z + w)^2.
                    let num = g_loc.add(&yy).mul(&inv_s);
                    let (q1, e1) = flip_second(&num).div_by_difference();
                    let (q2, e2) = q1.div_by_difference();
                    let m = flip_second(&q2);
                    let (q3, e3) = m.sub(&BiSeries::constant(ONE, m.deg())).div_by_difference();
                    let (q4, e4) = q3.div_by_difference();
                    let norm = num.get(0, 2).norm().max(1.0);
                    residual = residual.max(e1.max(e2).max(e3).max(e4) / norm);
                    q4.sub(&quasi_part.mul(&inv_s).scale(scale))
                };
                let mut trimmed = BiSeries::zero(deg);
                for i in 0..deg {
                    for j in 0..deg - i {
                        trimmed.set(i, j, reg.get(i, j));
                    }
                }
                if ia != ib {
                    regular[ib][ia] = trimmed.transpose();
                }
                regular[ia][ib] = trimmed;
            }
        }
        Ok(Self { charts, regular, quasi, deg, division_residual: residual, a })
    }

    /// `phi_{b,k}(z_a)` per `dz`: `delta_ab (k+1) z^-(k+2) + sum_i beta^{ab}_{ik} z^i`.
    pub fn basis_series(&self, a: usize, b: usize, k: usize) -> LaurentSeries {
        let reg = &self.regular[a][b];
        let len = self.deg.saturating_sub(k);
        let taylor: Vec<Complex64> = (0..len).map(|i| reg.get(i, k)).collect();
        if a != b {
            return LaurentSeries::from_taylor(taylor);
        }
        let lead = -(k as i32) - 2;
        let mut c = vec![ZERO; (len as i32 - lead) as usize];
        c[0] = Complex64::new((k + 1) as f64, 0.0);
        for (i, v) in taylor.iter().enumerate() {
            c[(i as i32 - lead) as usize] += v;
        }
        LaurentSeries::new(lead, c)
    }

    /// Coefficient of `B(z, w)` per `dz dw` at `w = -z` with `dw = -dz`, i.e. `B(p, p*)` per `dz^2`.
    pub fn involution_series(&self, a: usize) -> LaurentSeries {
        let reg = &self.regular[a][a];
        let mut c = vec![ZERO; self.deg + 2];
        c[0] = Complex64::new(-0.25, 0.0);
        for i in 0..self.deg {
            for j in 0..self.deg - i {
                let sign = if j % 2 == 0 { -1.0 } else { 1.0 };
                c[i + j + 2] += reg.get(i, j) * sign;
            }
        }
        LaurentSeries::new(-2, c).truncate(self.deg as i32)
    }

    /// `phi_{b,k}(p)` against `dx/2y`, for `k < kmax`, as a vector indexed by `k`.
    pub fn basis_values(&self, b: usize, x: Complex64, y: Complex64, kmax: usize) -> Result<Vec<Complex64>> {
        let ch = &self.charts[b];
        let n = kmax as i32 + 2;
        let konst = |v: Complex64| LaurentSeries::monomial(0, v, n);
        let x2 = ch.x_series(n as usize);
        let y2 = ch.y_series().truncate(n);
        let g = g6_coefficients(&self.a);
        let mut gser = LaurentSeries::zero(n);
        let mut pw = konst(ONE);
        for j in 0..4 {
            let cj: Complex64 = (0..4).map(|i| g[i][j] * x.powu(i as u32)).sum();
            gser = &gser + &pw.scale(cj);
            pw = (&pw * &x2).truncate(n);
        }
        let num = &gser + &y2.scale(y * 2.0);
        let d = &konst(x) - &x2;
        if d.at(0).norm() < 1e-13 * (1.0 + x.norm()) {
            return Err(Error::PointAtRamification);
        }
        let inv = d.invert()?;
        let rat = &(&num * &inv) * &inv;
        let q = &self.quasi;
        let quasi_part = &konst(q[(0, 0)] + q[(1, 0)] * x) + &x2.scale(q[(0, 1)] + q[(1, 1)] * x);
        let total = &(&rat - &quasi_part) * &ch.s.invert()?.truncate(n).scale(ch.rho);
        Ok((0..kmax).map(|k| total.at(k as i32)).collect())
    }
}
