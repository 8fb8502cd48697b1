//! Abel-Jacobi map, the Kleinian sigma function and the genus-two `wp` functions.
//!
//! Points are integrated from the base point: `infinity` for quintic and
//! Rosenhain models, the first listed root for sextics. Paths are polylines
//! that keep clear of branch points; `y` is carried along by continuity.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::curve::{HyperellipticCurve, Model};
use crate::error::{Error, Result};
use crate::numerics::linalg::{imag_eigenvalues, inv2};
use crate::numerics::quadrature::QuadratureRule;
use crate::numerics::{cr, Matrix2C, Poly, Vector2C};
use crate::periods::PeriodData;
use crate::theta::{theta, ThetaCharacteristic, Tensor3};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const NODES: usize = 24;

/// A point of the affine curve, or the point at infinity of an odd-degree model.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CurvePoint {
    Finite { x: Complex64, y: Complex64 },
    Infinity,
}

impl CurvePoint {
    /// The point over `x` with `y = sheet * sqrt(f(x))` (principal root).
    pub fn on_curve(curve: &HyperellipticCurve, x: Complex64, sheet: i8) -> Self {
        let y = curve.f(x).sqrt();
        CurvePoint::Finite { x, y: if sheet < 0 { -y } else { y } }
    }

    pub fn x(&self) -> Option<Complex64> {
        match self {
            CurvePoint::Finite { x, .. } => Some(*x),
            CurvePoint::Infinity => None,
        }
    }

    pub fn y(&self) -> Option<Complex64> {
        match self {
            CurvePoint::Finite { y, .. } => Some(*y),
            CurvePoint::Infinity => None,
        }
    }

    /// Image under `(x, y) -> (x, -y)`.
    pub fn involution(&self) -> Self {
        match self {
            CurvePoint::Finite { x, y } => CurvePoint::Finite { x: *x, y: -*y },
            CurvePoint::Infinity => CurvePoint::Infinity,
        }
    }

    /// `+1` or `-1` relative to the principal square root.
    pub fn sheet(&self, curve: &HyperellipticCurve) -> i8 {
        match self {
            CurvePoint::Finite { x, y } => {
                if (curve.f(*x).sqrt() * y.conj()).re >= 0.0 {
                    1
                } else {
                    -1
                }
            }
            CurvePoint::Infinity => 1,
        }
    }
}

/// Abel-Jacobi image: `u` in the frame `(dx/2y, x dx/2y)` and `v = Pi_A(omega)^-t u`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JacobianPoint {
    pub u: Vector2C,
    pub v: Vector2C,
}

impl JacobianPoint {
    pub fn from_u(u: Vector2C, pd: &PeriodData) -> Self {
        let m = inv2(&pd.pi_a_omega()).expect("Pi_A(omega) invertible").transpose();
        Self { u, v: m * u }
    }
}

/// Splits `v = n1 + tau n2` into real coordinates `(n1, n2)`.
pub fn lattice_coordinates(v: &Vector2C, tau: &Matrix2C) -> ([f64; 2], [f64; 2]) {
    let y = tau.map(|z| Complex64::new(z.im, 0.0));
    let yi = inv2(&y).expect("Im tau invertible");
    let w = Vector2C::new(cr(v[0].im), cr(v[1].im));
    let n2 = yi * w;
    let n2r = [n2[0].re, n2[1].re];
    let rest = v - tau * Vector2C::new(cr(n2r[0]), cr(n2r[1]));
    ([rest[0].re, rest[1].re], n2r)
}

/// Representative of `v` modulo `Z^2 + tau Z^2` with coordinates in `[-1/2, 1/2)`.
pub fn reduce(v: &Vector2C, tau: &Matrix2C) -> Vector2C {
    let (n1, n2) = lattice_coordinates(v, tau);
    let r2 = [n2[0] - n2[0].round(), n2[1] - n2[1].round()];
    let shift2 = Vector2C::new(cr(n2[0] - r2[0]), cr(n2[1] - r2[1]));
    let w = v - tau * shift2;
    Vector2C::new(w[0] - (n1[0]).round(), w[1] - (n1[1]).round())
}

/// The level-two characteristic `(a, b)` of a half-period `v = b + tau a`.
pub fn half_period_characteristic(v: &Vector2C, tau: &Matrix2C, tol: f64) -> Result<ThetaCharacteristic> {
    let (n1, n2) = lattice_coordinates(v, tau);
    let snap = |t: f64| -> Result<u8> {
        let h = 2.0 * t;
        if (h - h.round()).abs() > tol {
            return Err(Error::CharacteristicResolutionFailed(format!("{t} is not a half-integer")));
        }
        Ok((h.round() as i64).rem_euclid(2) as u8)
    };
    Ok(ThetaCharacteristic::from_bits([snap(n2[0])?, snap(n2[1])?, snap(n1[0])?, snap(n1[1])?]))
}

/// The half-integer characteristic `(a, b)` with `v = b + tau a`, not reduced mod 1.
pub fn unreduced_characteristic(v: &Vector2C, tau: &Matrix2C) -> ThetaCharacteristic {
    let (n1, n2) = lattice_coordinates(v, tau);
    let h = |t: f64| (2.0 * t).round() * 0.5;
    ThetaCharacteristic::new([h(n2[0]), h(n2[1])], [h(n1[0]), h(n1[1])])
}

/// Distance from `z` to the segment `[a, b]`.
fn seg_dist(z: Complex64, a: Complex64, b: Complex64) -> f64 {
    let d = b - a;
    if d.norm() == 0.0 {
        return (z - a).norm();
    }
    let t = ((z - a) * d.conj()).re / d.norm_sqr();
    (z - (a + d * t.clamp(0.0, 1.0))).norm()
}

fn clearance(roots: &[Complex64], path: &[Complex64], skip: &[Complex64]) -> f64 {
    let mut m = f64::INFINITY;
    for r in roots {
        if skip.iter().any(|s| (s - r).norm() < 1e-14 * (1.0 + r.norm())) {
            continue;
        }
        for w in path.windows(2) {
            m = m.min(seg_dist(*r, w[0], w[1]));
        }
    }
    m
}

/// A polyline from `a` to `b` avoiding branch points other than the endpoints.
pub fn plan_path(curve: &HyperellipticCurve, a: Complex64, b: Complex64) -> Vec<Complex64> {
    let roots = curve.roots();
    let mut sep = f64::INFINITY;
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            sep = sep.min((roots[i] - roots[j]).norm());
        }
    }
    let skip = [a, b];
    let direct = vec![a, b];
    let margin = 0.2 * sep;
    let c0 = clearance(roots, &direct, &skip);
    if c0 >= margin {
        return direct;
    }
    let mid = (a + b) * 0.5;
    let d = if (b - a).norm() > 0.0 { b - a } else { ONE * sep };
    let normal = d * Complex64::new(0.0, 1.0) / d.norm();
    let mut best = (c0, direct);
    for k in 1..=12 {
        for s in [1.0, -1.0] {
            let off = s * k as f64 * 0.25 * sep.max(0.25 * d.norm());
            let w = mid + normal * off;
            let path = vec![a, w, b];
            let c = clearance(roots, &path, &skip);
            if c > best.0 {
                best = (c, path);
            }
        }
        if best.0 >= margin {
            break;
        }
    }
    best.1
}

/// Distance from `x` to the nearest branch point not in `skip`.
fn nearest_root(roots: &[Complex64], x: Complex64, skip: Option<Complex64>) -> f64 {
    roots
        .iter()
        .filter(|r| skip.map_or(true, |s| (*r - s).norm() > 1e-14 * (1.0 + s.norm())))
        .map(|r| (r - x).norm())
        .fold(f64::INFINITY, f64::min)
}

fn closest_sign(y: Complex64, prev: Complex64) -> Complex64 {
    if (y * prev.conj()).re >= 0.0 {
        y
    } else {
        -y
    }
}

/// Integrates `P_k(x) dx/2y` along `path`, carrying `y` by continuity.
/// `y_start = None` marks a branch-point start (sheet chosen freely);
/// `end_branch` marks a branch-point end. Returns the integrals and the final `y`.
pub fn integrate_path(
    curve: &HyperellipticCurve,
    path: &[Complex64],
    y_start: Option<Complex64>,
    end_branch: bool,
    nums: &[Poly],
) -> Result<(Vec<Complex64>, Complex64)> {
    let roots = curve.roots();
    let rule = QuadratureRule::gauss_legendre(NODES);
    let fpoly = curve.poly();
    let mut acc = vec![ZERO; nums.len()];
    let mut y_prev = y_start;
    let nlegs = path.len() - 1;
    for leg in 0..nlegs {
        let (mut x0, x1) = (path[leg], path[leg + 1]);
        let start_sing = leg == 0 && y_start.is_none();
        let end_sing = leg + 1 == nlegs && end_branch;
        if start_sing {
            // x = e + (x_mid - e) w^2 over a short first piece.
            let e = x0;
            let reach = (0.5 * nearest_root(roots, e, Some(e))).min((x1 - e).norm());
            let xm = e + (x1 - e) / (x1 - e).norm() * reach;
            let d = xm - e;
            let mut pts: Vec<(f64, f64)> = rule.nodes.iter().zip(rule.weights.iter()).map(|(t, w)| (0.5 * (t + 1.0), 0.5 * w)).collect();
            pts.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
            let mut yp: Option<Complex64> = None;
            for (w, wt) in pts {
                let x = e + d * (w * w);
                let mut y = fpoly.eval(x).sqrt();
                if let Some(p) = yp {
                    y = closest_sign(y, p);
                }
                yp = Some(y);
                let jac = d * (2.0 * w) * wt;
                for (k, p) in nums.iter().enumerate() {
                    acc[k] += p.eval(x) * jac / (y * 2.0);
                }
            }
            let ym = closest_sign(fpoly.eval(xm).sqrt(), yp.unwrap());
            y_prev = Some(ym);
            x0 = xm;
            if (x1 - xm).norm() < 1e-15 {
                continue;
            }
        }
        let mut xe = x1;
        if end_sing {
            let reach = (0.5 * nearest_root(roots, x1, Some(x1))).min((x1 - x0).norm() * 0.999);
            xe = x1 + (x0 - x1) / (x0 - x1).norm() * reach;
        }
        // Regular pieces from x0 to xe.
        let mut a = x0;
        let mut y = y_prev.expect("sheet fixed");
        let total = (xe - a).norm();
        let mut travelled = 0.0;
        while travelled < total * (1.0 - 1e-14) && (xe - a).norm() > 1e-15 {
            let skip_end = if end_sing { Some(x1) } else { None };
            let near = nearest_root(roots, a, None).min(nearest_root(roots, a, skip_end));
            let step = (0.25 * near).min((xe - a).norm());
            let b = a + (xe - a) / (xe - a).norm() * step;
            let h = (b - a) * 0.5;
            let m = (a + b) * 0.5;
            for (t, wt) in rule.nodes.iter().zip(rule.weights.iter()) {
                let x = m + h * *t;
                y = closest_sign(fpoly.eval(x).sqrt(), y);
                for (k, p) in nums.iter().enumerate() {
                    acc[k] += p.eval(x) * h * *wt / (y * 2.0);
                }
            }
            y = closest_sign(fpoly.eval(b).sqrt(), y);
            travelled += step;
            a = b;
        }
        y_prev = Some(y);
        if end_sing {
            // x = e + (xe - e) w^2, w from 1 down to 0.
            let e = x1;
            let d = xe - e;
            let mut pts: Vec<(f64, f64)> = rule.nodes.iter().zip(rule.weights.iter()).map(|(t, w)| (0.5 * (t + 1.0), 0.5 * w)).collect();
            pts.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
            let mut yp = y;
            for (w, wt) in pts {
                let x = e + d * (w * w);
                let yy = closest_sign(fpoly.eval(x).sqrt(), yp);
                yp = yy;
                let jac = d * (2.0 * w) * wt;
                for (k, p) in nums.iter().enumerate() {
                    acc[k] -= p.eval(x) * jac / (yy * 2.0);
                }
            }
            y_prev = Some(ZERO);
        }
    }
    for v in &acc {
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(Error::NonFiniteSample);
        }
    }
    Ok((acc, y_prev.unwrap_or(ZERO)))
}

/// `int_{x_far}^{infinity} P_k dx/2y` along the ray `x = x_far / s^2`,
/// starting on the sheet `y_far`. Odd-degree models only.
fn integrate_to_infinity(curve: &HyperellipticCurve, x_far: Complex64, y_far: Complex64, nums: &[Poly]) -> Result<Vec<Complex64>> {
    let fpoly = curve.poly();
    let deg = curve.degree() as i32;
    let rule = QuadratureRule::gauss_legendre(2 * NODES);
    // s from 1 down to 0; ytilde = y s^5 is analytic and nonvanishing.
    let mut pts: Vec<(f64, f64)> = rule.nodes.iter().zip(rule.weights.iter()).map(|(t, w)| (0.5 * (t + 1.0), 0.5 * w)).collect();
    pts.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    let mut yt_prev = y_far;
    let mut acc = vec![ZERO; nums.len()];
    for (s, wt) in pts {
        let x = x_far / (s * s);
        let yt = closest_sign((fpoly.eval(x) * s.powi(2 * deg)).sqrt(), yt_prev);
        yt_prev = yt;
        // dx = -2 x_far / s^3 ds; integral over s from 1 to 0 flips the sign.
        let dx_ds = -x_far * 2.0 / (s * s * s);
        let y = yt / s.powi(deg);
        for (k, p) in nums.iter().enumerate() {
            acc[k] -= p.eval(x) * dx_ds * wt / (y * 2.0);
        }
    }
    Ok(acc)
}

fn omega_nums() -> [Poly; 2] {
    [Poly::new(vec![ONE]), Poly::new(vec![ZERO, ONE])]
}

fn is_branch(curve: &HyperellipticCurve, x: Complex64) -> Option<Complex64> {
    let scale = curve.roots().iter().map(|r| r.norm()).fold(1.0, f64::max);
    curve.roots().iter().find(|r| (*r - x).norm() < 1e-12 * scale).copied()
}

/// `int_base^p (omega1, omega2)` (unreduced).
pub fn abel_jacobi_u(curve: &HyperellipticCurve, p: &CurvePoint) -> Result<Vector2C> {
    let nums = omega_nums();
    match curve.model() {
        Model::Sextic => {
            let CurvePoint::Finite { x, y } = *p else {
                return Err(Error::InvalidInput("sextic models have no single point at infinity".into()));
            };
            let base = curve.roots()[0];
            if (x - base).norm() < 1e-14 * (1.0 + base.norm()) {
                return Ok(Vector2C::zeros());
            }
            let end_branch = is_branch(curve, x);
            let path = plan_path(curve, base, end_branch.unwrap_or(x));
            let (v, y_end) = integrate_path(curve, &path, None, end_branch.is_some(), &nums)?;
            let sign = if end_branch.is_some() || (y_end * y.conj()).re >= 0.0 { 1.0 } else { -1.0 };
            Ok(Vector2C::new(v[0] * sign, v[1] * sign))
        }
        _ => {
            let CurvePoint::Finite { x, y } = *p else {
                return Ok(Vector2C::zeros());
            };
            let roots = curve.roots();
            let rmax = roots.iter().map(|r| r.norm()).fold(0.0, f64::max);
            let radius = 2.0 * rmax.max(x.norm()) + 1.0;
            // A far point in a direction away from all branch points.
            let mut best = (f64::NEG_INFINITY, ZERO);
            for k in 0..32 {
                let cand = Complex64::from_polar(radius, 2.0 * PI * (k as f64 + 0.5) / 32.0);
                let c = clearance(roots, &[x, cand], &[x]);
                if c > best.0 {
                    best = (c, cand);
                }
            }
            let x_far = best.1;
            let branch = is_branch(curve, x);
            let path = plan_path(curve, branch.unwrap_or(x), x_far);
            let (v, y_far) = match branch {
                Some(_) => integrate_path(curve, &path, None, false, &nums)?,
                None => integrate_path(curve, &path, Some(y), false, &nums)?,
            };
            let tail = integrate_to_infinity(curve, x_far, y_far, &nums)?;
            // int_inf^p = -(int_p^far + int_far^inf)
            Ok(Vector2C::new(-(v[0] + tail[0]), -(v[1] + tail[1])))
        }
    }
}

pub fn abel_jacobi(p: &CurvePoint, pd: &PeriodData) -> Result<JacobianPoint> {
    Ok(JacobianPoint::from_u(abel_jacobi_u(&pd.curve, p)?, pd))
}

/// `int_q^p omega` along a direct path (no base point).
pub fn integral_between(curve: &HyperellipticCurve, q: &CurvePoint, p: &CurvePoint) -> Result<Vector2C> {
    let (CurvePoint::Finite { x: xq, y: yq }, CurvePoint::Finite { x: xp, y: yp }) = (*q, *p) else {
        return Err(Error::InvalidInput("finite points required".into()));
    };
    let nums = omega_nums();
    let path = plan_path(curve, xq, xp);
    let (v, y_end) = integrate_path(curve, &path, Some(yq), false, &nums)?;
    if (y_end * yp.conj()).re >= 0.0 {
        return Ok(Vector2C::new(v[0], v[1]));
    }
    // Landed on the other sheet: int_q^p = int_q^{sigma p} + 2 int_e^p for a branch point e.
    let e = *curve
        .roots()
        .iter()
        .min_by(|a, b| (*a - xp).norm().partial_cmp(&(*b - xp).norm()).unwrap())
        .unwrap();
    let path2 = plan_path(curve, e, xp);
    let (w, y2) = integrate_path(curve, &path2, None, false, &nums)?;
    let s = if (y2 * yp.conj()).re >= 0.0 { 1.0 } else { -1.0 };
    Ok(Vector2C::new(v[0] + w[0] * (2.0 * s), v[1] + w[1] * (2.0 * s)))
}

/// Half-period images of the branch points and the odd characteristic
/// `delta` whose theta function vanishes on the embedded curve.
#[derive(Clone, Debug)]
pub struct ThetaDivisorData {
    pub delta: ThetaCharacteristic,
    /// Characteristics of `phi(e_k)` for each finite branch point, in root order.
    pub branch_characteristics: Vec<ThetaCharacteristic>,
    /// Normalized images `phi(e_k)`.
    pub branch_images: Vec<Vector2C>,
    /// `phi(e_k) = b + tau a` as unreduced half-integer characteristics.
    pub branch_half_periods: Vec<ThetaCharacteristic>,
}

/// Locates `delta` by testing all odd characteristics on sample points of the curve.
pub fn theta_divisor(pd: &PeriodData) -> Result<ThetaDivisorData> {
    let curve = &pd.curve;
    let mut imgs = Vec::new();
    let mut chars = Vec::new();
    for e in curve.roots() {
        let jp = abel_jacobi(&CurvePoint::Finite { x: *e, y: ZERO }, pd)?;
        chars.push(half_period_characteristic(&jp.v, &pd.tau, 1e-6)?);
        imgs.push(jp.v);
    }
    let roots = curve.roots();
    let centre = roots.iter().sum::<Complex64>() / roots.len() as f64;
    let spread = roots.iter().map(|r| (r - centre).norm()).fold(0.0, f64::max);
    let samples = [
        centre + Complex64::new(0.31, 0.47) * spread,
        centre + Complex64::new(-0.53, 0.21) * spread,
        centre + Complex64::new(0.12, -0.66) * spread,
    ];
    let mut best: Option<(f64, ThetaCharacteristic)> = None;
    let mut second = f64::INFINITY;
    let pts: Vec<Vector2C> = samples
        .iter()
        .map(|x| abel_jacobi(&CurvePoint::on_curve(curve, *x, 1), pd).map(|j| j.v))
        .collect::<Result<_>>()?;
    for d in ThetaCharacteristic::odds() {
        let mut worst: f64 = 0.0;
        for v in &pts {
            let num = theta(&d, v, &pd.tau, 1)?;
            let scale = num.gradient.norm().max(num.value.norm()).max(1e-300);
            worst = worst.max(num.value.norm() / scale);
        }
        match best {
            Some((b, _)) if worst >= b => second = second.min(worst),
            _ => {
                if let Some((b, _)) = best {
                    second = second.min(b);
                }
                best = Some((worst, d));
            }
        }
    }
    let (res, delta) = best.unwrap();
    if res > 1e-6 || second < 1e-3 {
        return Err(Error::CharacteristicResolutionFailed(format!("theta divisor residual {res:e}, runner-up {second:e}")));
    }
    let halves = imgs.iter().map(|v| unreduced_characteristic(v, &pd.tau)).collect();
    Ok(ThetaDivisorData { delta, branch_characteristics: chars, branch_images: imgs, branch_half_periods: halves })
}

/// Kleinian sigma `exp(-u^t kappa u / 2) theta[delta](Pi_A^-t u)`.
pub fn sigma(u: &Vector2C, pd: &PeriodData, delta: &ThetaCharacteristic) -> Result<Complex64> {
    let k = pd.kappa();
    let q = (u.transpose() * k * u)[(0, 0)];
    let v = inv2(&pd.pi_a_omega())?.transpose() * u;
    Ok((-q * 0.5).exp() * theta(delta, &v, &pd.tau, 0)?.value)
}

/// `wp_ij` and `wp_ijk` at `u`.
#[derive(Clone, Debug)]
pub struct WpValues {
    pub wp2: Matrix2C,
    pub wp3: Tensor3,
}

pub fn wp(u: &Vector2C, pd: &PeriodData, delta: &ThetaCharacteristic) -> Result<WpValues> {
    let m = inv2(&pd.pi_a_omega())?;
    let v = m.transpose() * u;
    let th = theta(delta, &v, &pd.tau, 3)?;
    let scale = th.gradient.norm().max(1e-300);
    if th.value.norm() < 1e-8 * scale {
        return Err(Error::OnThetaDivisor);
    }
    let t0 = th.value;
    let g = th.gradient;
    let h = th.hessian;
    let t3 = th.third.unwrap();
    let lh = th.log_hessian();
    let mut l3 = [[[ZERO; 2]; 2]; 2];
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                l3[a][b][c] = t3[a][b][c] / t0 - (h[(a, b)] * g[c] + h[(a, c)] * g[b] + h[(b, c)] * g[a]) / (t0 * t0)
                    + g[a] * g[b] * g[c] * 2.0 / (t0 * t0 * t0);
            }
        }
    }
    let wp2 = pd.kappa() - m * lh * m.transpose();
    let mut wp3 = [[[ZERO; 2]; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                let mut s = ZERO;
                for a in 0..2 {
                    for b in 0..2 {
                        for c in 0..2 {
                            s += m[(i, a)] * m[(j, b)] * m[(k, c)] * l3[a][b][c];
                        }
                    }
                }
                wp3[i][j][k] = -s;
            }
        }
    }
    Ok(WpValues { wp2, wp3 })
}

/// Recovers `(x, y)` of `p` from `wp` on the embedded curve, approaching
/// `phi(p)` through `Phi(p, p')` with `p' -> infinity` and extrapolating.
pub fn restrict_to_curve(p: &CurvePoint, pd: &PeriodData, delta: &ThetaCharacteristic) -> Result<(Complex64, Complex64)> {
    let curve = &pd.curve;
    if curve.model() == Model::Sextic {
        return Err(Error::ModelMismatch("restriction uses the point at infinity of an odd model".into()));
    }
    let CurvePoint::Finite { x, .. } = *p else {
        return Err(Error::WeierstrassPointLimit);
    };
    if is_branch(curve, x).is_some() {
        return Err(Error::WeierstrassPointLimit);
    }
    let up = abel_jacobi_u(curve, p)?;
    let rmax = curve.roots().iter().map(|r| r.norm()).fold(x.norm(), f64::max);
    // Local parameter t = x'^{-1/2} at infinity.
    let ts: Vec<f64> = (0..3).map(|k| 0.5 / (rmax.max(1.0)).sqrt() * 0.8f64.powi(k)).collect();
    let mut r1 = Vec::new();
    let mut r2 = Vec::new();
    let dir = Complex64::from_polar(1.0, 0.37);
    for t in &ts {
        let xq = dir / (t * t);
        let q = CurvePoint::on_curve(curve, xq, 1);
        let u = up + abel_jacobi_u(curve, &q)?;
        let w = wp(&u, pd, delta)?;
        let p2 = w.wp2;
        // x + x' = wp22 and x x' = -wp12; take the root nearer the finite point.
        let (s1, s2) = (p2[(1, 1)], -p2[(0, 1)]);
        let disc = (s1 * s1 - s2 * 4.0).sqrt();
        let (ra, rb) = ((s1 + disc) * 0.5, (s1 - disc) * 0.5);
        let xs = if ra.norm() < rb.norm() { ra } else { rb };
        r1.push(xs);
        r2.push((w.wp3[1][1][1] * xs + w.wp3[0][1][1]) * 0.5);
    }
    let xr = neville_at_zero(&ts, &r1);
    let yr = neville_at_zero(&ts, &r2);
    Ok((xr, yr))
}

/// Polynomial extrapolation of samples `f(t_k)` to `t = 0`.
pub fn neville_at_zero(ts: &[f64], fs: &[Complex64]) -> Complex64 {
    let n = ts.len();
    let mut p = fs.to_vec();
    for m in 1..n {
        for i in 0..n - m {
            p[i] = (p[i + 1] * ts[i] - p[i] * ts[i + m]) / (ts[i] - ts[i + m]);
        }
    }
    p[0]
}

/// True when `Im tau` is comfortably positive.
pub fn well_conditioned(tau: &Matrix2C) -> bool {
    imag_eigenvalues(tau).0 > 0.05
}
