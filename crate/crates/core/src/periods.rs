//! Symplectic homology bases and the period / quasi-period matrix.
//!
//! Cycles are built from loops around straight segments joining consecutive
//! branch points of an x-monotone chain. On a segment `[a, b]` we write
//! `x = m + h t`, `t in [-1, 1]`, and fix the sheet
//! `y = c sqrt(1 - t^2) prod_k sqrt_k(t - t_k)` where each `sqrt_k` is a branch
//! that is continuous on the whole segment.
//!
//! `PeriodData::pi` has rows `(B1, B2, A1, A2)` and columns
//! `(omega1, omega2, eta1, eta2)` with `omega = (1, x) dx/2y` and
//! `eta1 = (a3 x + 2 a2 x^2 + 3 a1 x^3 + 4 a0 x^4) dx/2y`,
//! `eta2 = (a1 x^2 + 2 a0 x^3) dx/2y` in terms of the sextic-form
//! coefficients (for a monic quintic these are Baker's
//! `(3x^3 + 2 b1 x^2 + b2 x) dx/2y` and `x^2 dx/2y`).

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::curve::{HyperellipticCurve, Model};
use crate::error::{Error, Result};
use crate::numerics::linalg::{blocks, from_blocks, imag_eigenvalues, inv2, j4, max_abs4};
use crate::numerics::quadrature::{adaptive_vector, QuadratureRule};
use crate::numerics::{cr, Matrix2C, Matrix4C, Poly, QuadratureOptions};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Integer 4x4 matrices.
pub type IMat4 = [[i64; 4]; 4];

/// The standard form `((0, 1), (-1, 0))` in the ordering `(A1, A2, B1, B2)`.
pub const J4: IMat4 = [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]];

/// A symplectic homology basis expressed through segment loops.
#[derive(Clone, Debug, PartialEq)]
pub struct Marking {
    /// Branch-point index pairs `(start, end)` of the four segments.
    pub tree: Vec<(usize, usize)>,
    /// Intersection numbers of the four segment loops.
    pub segment_intersections: IMat4,
    /// Rows `A1, A2, B1, B2` as integer combinations of segment loops.
    pub cycle_vectors: IMat4,
    /// `cycle_vectors * segment_intersections * cycle_vectors^t`; always `J4`.
    pub intersection_form: IMat4,
}

/// Options for the marking construction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MarkingOptions {
    /// Rank of the projection direction to use (0 = best separated).
    pub direction_rank: usize,
}

impl Default for MarkingOptions {
    fn default() -> Self {
        Self { direction_rank: 0 }
    }
}

/// Periods, quasi-periods and the normalized period matrix.
#[derive(Clone, Debug)]
pub struct PeriodData {
    pub pi: Matrix4C,
    pub tau: Matrix2C,
    pub marking: Marking,
    pub curve: HyperellipticCurve,
    /// Loop integrals of `(omega1, omega2, eta1, eta2)` (columns) over the
    /// segment loops (rows).
    pub segment_periods: Matrix4C,
}

/// Sheet data for one segment.
#[derive(Clone, Debug)]
pub struct SegmentSheet {
    pub a: Complex64,
    pub b: Complex64,
    pub m: Complex64,
    pub h: Complex64,
    pub c: Complex64,
    /// `(t_k, u_k)`: the other roots in the `t` coordinate and the unit
    /// direction used for their square-root branch.
    pub others: Vec<(Complex64, Complex64)>,
}

impl SegmentSheet {
    pub fn new(curve: &HyperellipticCurve, ia: usize, ib: usize) -> Self {
        let roots = curve.roots();
        let a = roots[ia];
        let b = roots[ib];
        let m = (a + b) * 0.5;
        let h = (b - a) * 0.5;
        let deg = roots.len() as u32;
        let c = (-curve.leading() * h.powu(deg)).sqrt();
        let others = roots
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != ia && *k != ib)
            .map(|(_, r)| {
                let tk = (r - m) / h;
                let closest = Complex64::new(tk.re.clamp(-1.0, 1.0), 0.0) - tk;
                (tk, closest / closest.norm())
            })
            .collect();
        Self { a, b, m, h, c, others }
    }

    /// `y / sqrt(1 - t^2)` at parameter `t` (any complex `t` for which the
    /// branches stay continuous; exact on the real segment).
    pub fn reduced_y(&self, t: Complex64) -> Complex64 {
        let mut p = self.c;
        for (tk, u) in &self.others {
            p *= branch_sqrt(t - tk, *u);
        }
        p
    }

    pub fn x_at(&self, t: f64) -> Complex64 {
        self.m + self.h * t
    }

    /// `y` on this sheet at real parameter `t`.
    pub fn y_at(&self, t: f64) -> Complex64 {
        self.reduced_y(cr(t)) * (1.0 - t * t).sqrt()
    }

    /// `int_a^b P(x) dx / 2y` for several numerators at once with a
    /// Gauss-Chebyshev rule of `n` nodes.
    pub fn integrate(&self, numerators: &[Poly], n: usize) -> Result<Vec<Complex64>> {
        let rule = QuadratureRule::gauss_chebyshev(n);
        let mut acc = vec![ZERO; numerators.len()];
        for (t, w) in rule.nodes.iter().zip(rule.weights.iter()) {
            let x = self.x_at(*t);
            let base = self.h / (self.reduced_y(cr(*t)) * 2.0) * *w;
            if !base.re.is_finite() || !base.im.is_finite() {
                return Err(Error::NonFiniteSample);
            }
            for (k, p) in numerators.iter().enumerate() {
                acc[k] += p.eval(x) * base;
            }
        }
        Ok(acc)
    }
}

/// `sqrt(w)` continuous on any convex set whose closest point to 0 lies in
/// direction `u`.
pub fn branch_sqrt(w: Complex64, u: Complex64) -> Complex64 {
    (w * u.conj()).sqrt() * u.sqrt()
}

/// The four differential numerators `(1, x, eta1, eta2)` for a curve.
pub fn form_numerators(curve: &HyperellipticCurve) -> [Poly; 4] {
    let a = curve.sextic_form();
    [
        Poly::new(vec![ONE]),
        Poly::new(vec![ZERO, ONE]),
        Poly::new(vec![ZERO, a[3], a[2] * 2.0, a[1] * 3.0, a[0] * 4.0]),
        Poly::new(vec![ZERO, ZERO, a[1], a[0] * 2.0]),
    ]
}

/// Orders branch points along the projection direction with the
/// `rank`-th largest minimum gap.
fn chain_order(roots: &[Complex64], rank: usize) -> Vec<usize> {
    let mut cands: Vec<(f64, Vec<usize>)> = (0..180)
        .map(|j| {
            let dir = Complex64::from_polar(1.0, PI * j as f64 / 180.0);
            let proj: Vec<f64> = roots.iter().map(|r| (r * dir.conj()).re).collect();
            let mut idx: Vec<usize> = (0..roots.len()).collect();
            idx.sort_by(|&i, &k| proj[i].partial_cmp(&proj[k]).unwrap());
            let gap = idx.windows(2).map(|w| proj[w[1]] - proj[w[0]]).fold(f64::INFINITY, f64::min);
            (gap, idx)
        })
        .collect();
    cands.sort_by(|x, y| y.0.partial_cmp(&x.0).unwrap());
    // Skip candidates giving the same ordering as a better one.
    let mut distinct: Vec<Vec<usize>> = Vec::new();
    for (_, idx) in cands {
        let rev: Vec<usize> = idx.iter().rev().copied().collect();
        if !distinct.iter().any(|d| *d == idx || *d == rev) {
            distinct.push(idx);
        }
    }
    distinct[rank.min(distinct.len() - 1)].clone()
}

/// Intersection number of the loops around segments `e` and `f` sharing an
/// endpoint; `0` for disjoint segments.
fn loop_intersection(curve: &HyperellipticCurve, e: (usize, usize), f: (usize, usize)) -> i64 {
    let shared = [e.0, e.1].into_iter().find(|p| *p == f.0 || *p == f.1);
    let Some(p) = shared else { return 0 };
    let direction = |seg: (usize, usize)| {
        let s = SegmentSheet::new(curve, seg.0, seg.1);
        if seg.0 == p {
            s.reduced_y(cr(-1.0))
        } else {
            -s.reduced_y(cr(1.0))
        }
    };
    let de = direction(e);
    let df = direction(f);
    let cross = (de.conj() * df).im;
    if cross > 0.0 {
        1
    } else {
        -1
    }
}

fn form(u: &[i64; 4], i: &IMat4, v: &[i64; 4]) -> i64 {
    let mut s = 0;
    for a in 0..4 {
        for b in 0..4 {
            s += u[a] * i[a][b] * v[b];
        }
    }
    s
}

/// Symplectic Gram-Schmidt over the integers: rows `A1, A2, B1, B2` with
/// `A_i . B_j = delta_ij` and all other pairings zero.
pub fn symplectic_reduce(iform: &IMat4) -> Result<IMat4> {
    let mut pool: Vec<[i64; 4]> = (0..4)
        .map(|k| {
            let mut v = [0; 4];
            v[k] = 1;
            v
        })
        .collect();
    let mut a_vecs = Vec::new();
    let mut b_vecs = Vec::new();
    for _ in 0..2 {
        let support = |v: &[i64; 4]| v.iter().filter(|x| **x != 0).count();
        let mut best: Option<(usize, usize, usize, i64)> = None;
        for i in 0..pool.len() {
            for j in 0..pool.len() {
                if i == j {
                    continue;
                }
                let w = form(&pool[i], iform, &pool[j]);
                if w.abs() == 1 {
                    let s = support(&pool[i]) + support(&pool[j]);
                    if best.map_or(true, |b| s < b.2) {
                        best = Some((i, j, s, w));
                    }
                }
            }
        }
        let (i, j, _, w) = best.ok_or_else(|| Error::InvalidInput("intersection form is not unimodular".into()))?;
        let a = pool[i];
        let b: [i64; 4] = pool[j].map(|x| x * w);
        let rest: Vec<[i64; 4]> = pool
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i && *k != j)
            .map(|(_, v)| {
                let vb = form(v, iform, &b);
                let va = form(v, iform, &a);
                let mut out = *v;
                for k in 0..4 {
                    out[k] = v[k] - vb * a[k] + va * b[k];
                }
                out
            })
            .collect();
        a_vecs.push(a);
        b_vecs.push(b);
        pool = rest;
    }
    Ok([a_vecs[0], a_vecs[1], b_vecs[0], b_vecs[1]])
}

/// `c * i * c^t` for integer matrices.
pub fn congruence(c: &IMat4, i: &IMat4) -> IMat4 {
    let mut out = [[0; 4]; 4];
    for r in 0..4 {
        for s in 0..4 {
            out[r][s] = form(&c[r], i, &c[s]);
        }
    }
    out
}

pub fn build_marking(curve: &HyperellipticCurve) -> Result<Marking> {
    build_marking_with(curve, MarkingOptions::default())
}

pub fn build_marking_with(curve: &HyperellipticCurve, opts: MarkingOptions) -> Result<Marking> {
    let roots = curve.roots();
    if roots.len() != 5 && roots.len() != 6 {
        return Err(Error::InvalidInput("genus two needs 5 or 6 finite branch points".into()));
    }
    crate::numerics::poly::check_distinct(roots, crate::numerics::poly::ROOT_SEPARATION)?;
    let order = chain_order(roots, opts.direction_rank);
    let tree: Vec<(usize, usize)> = (0..4).map(|k| (order[k], order[k + 1])).collect();
    let mut si = [[0i64; 4]; 4];
    for e in 0..4 {
        for f in 0..4 {
            if e != f {
                si[e][f] = loop_intersection(curve, tree[e], tree[f]);
            }
        }
    }
    let cycles = symplectic_reduce(&si)?;
    let iform = congruence(&cycles, &si);
    debug_assert_eq!(iform, J4);
    Ok(Marking { tree, segment_intersections: si, cycle_vectors: cycles, intersection_form: iform })
}

impl Marking {
    /// Applies `gamma` (acting on the column `(B1, B2, A1, A2)`).
    pub fn act(&self, gamma: &IMat4) -> Marking {
        let old = &self.cycle_vectors;
        // Row order (B1, B2, A1, A2) of the old cycles.
        let ba = [old[2], old[3], old[0], old[1]];
        let mut new_ba = [[0i64; 4]; 4];
        for r in 0..4 {
            for k in 0..4 {
                for s in 0..4 {
                    new_ba[r][s] += gamma[r][k] * ba[k][s];
                }
            }
        }
        let cycles = [new_ba[2], new_ba[3], new_ba[0], new_ba[1]];
        let iform = congruence(&cycles, &self.segment_intersections);
        Marking {
            tree: self.tree.clone(),
            segment_intersections: self.segment_intersections,
            cycle_vectors: cycles,
            intersection_form: iform,
        }
    }
}

/// Loop integrals over the four segments of a marking.
pub fn segment_periods(curve: &HyperellipticCurve, marking: &Marking, opts: &QuadratureOptions) -> Result<Matrix4C> {
    let nums = form_numerators(curve);
    let mut out = Matrix4C::zeros();
    for (row, seg) in marking.tree.iter().enumerate() {
        let sheet = SegmentSheet::new(curve, seg.0, seg.1);
        let v = adaptive_vector(|n| sheet.integrate(&nums, n), opts)?;
        for k in 0..4 {
            out[(row, k)] = v[k] * 2.0;
        }
    }
    Ok(out)
}

/// Sign `s` of the Riemann bilinear relation `Pi J Pi^t = s J` in the row
/// layout `(B, A)` used here: `-2 pi i`.
pub fn bilinear_constant() -> Complex64 {
    Complex64::new(0.0, -2.0 * PI)
}

/// Periods with default quadrature.
pub fn periods(curve: &HyperellipticCurve, marking: &Marking) -> Result<PeriodData> {
    periods_with(curve, marking, &QuadratureOptions::default())
}

pub fn periods_with(curve: &HyperellipticCurve, marking: &Marking, opts: &QuadratureOptions) -> Result<PeriodData> {
    let seg = segment_periods(curve, marking, opts)?;
    let pd = PeriodData::assemble(curve.clone(), marking.clone(), seg)?;
    let res = pd.bilinear_residual();
    if res > 1e-6 {
        return Err(Error::BilinearRelationViolated(res));
    }
    Ok(pd)
}

/// Marking and periods in one step.
pub fn compute(curve: &HyperellipticCurve) -> Result<PeriodData> {
    let m = build_marking(curve)?;
    periods(curve, &m)
}

impl PeriodData {
    /// Combines segment-loop periods through the marking.
    pub fn assemble(curve: HyperellipticCurve, marking: Marking, seg: Matrix4C) -> Result<Self> {
        let cv = &marking.cycle_vectors;
        let mut pi = Matrix4C::zeros();
        // Output rows (B1, B2, A1, A2) = cycle rows (2, 3, 0, 1).
        for (out_row, cyc_row) in [2usize, 3, 0, 1].iter().enumerate() {
            for col in 0..4 {
                let mut s = ZERO;
                for k in 0..4 {
                    s += seg[(k, col)] * cv[*cyc_row][k] as f64;
                }
                pi[(out_row, col)] = s;
            }
        }
        let (bw, _, aw, _) = blocks(&pi);
        let tau = bw * inv2(&aw)?;
        let pd = Self { pi, tau, marking, curve, segment_periods: seg };
        let (lo, _) = imag_eigenvalues(&pd.tau);
        if lo <= 0.0 {
            return Err(Error::NotInSiegelSpace);
        }
        Ok(pd)
    }

    pub fn pi_b_omega(&self) -> Matrix2C {
        blocks(&self.pi).0
    }
    pub fn pi_b_eta(&self) -> Matrix2C {
        blocks(&self.pi).1
    }
    pub fn pi_a_omega(&self) -> Matrix2C {
        blocks(&self.pi).2
    }
    pub fn pi_a_eta(&self) -> Matrix2C {
        blocks(&self.pi).3
    }

    /// `Pi_A(omega)^-1 Pi_A(eta)`.
    pub fn kappa(&self) -> Matrix2C {
        inv2(&self.pi_a_omega()).expect("Pi_A(omega) is invertible") * self.pi_a_eta()
    }

    /// The non-holomorphic completion `Y = 2 pi i Pi_A^-1 (tau - conj tau)^-1 Pi_A^-t`.
    pub fn nonholomorphic_y(&self) -> Matrix2C {
        let pa_inv = inv2(&self.pi_a_omega()).expect("Pi_A(omega) is invertible");
        let diff = self.tau - self.tau.map(|z| z.conj());
        let d_inv = inv2(&diff).expect("Im tau is nondegenerate");
        pa_inv * d_inv * pa_inv.transpose() * Complex64::new(0.0, 2.0 * PI)
    }

    /// `|| Pi J Pi^t - s J ||_inf` with `s = bilinear_constant()`.
    pub fn bilinear_residual(&self) -> f64 {
        let j = j4();
        max_abs4(&(self.pi * j * self.pi.transpose() - j * bilinear_constant()))
    }

    /// `|| P J P^t - 2 pi i J ||_inf` for `P = forms_by_cycles()`.
    pub fn bilinear_residual_forms_by_cycles(&self) -> f64 {
        let j = j4();
        let p = self.forms_by_cycles();
        max_abs4(&(p * j * p.transpose() - j * Complex64::new(0.0, 2.0 * PI)))
    }

    /// `|| kappa - kappa^t ||`.
    pub fn quasi_period_asymmetry(&self) -> f64 {
        let k = self.kappa();
        (k[(0, 1)] - k[(1, 0)]).norm()
    }

    /// Periods after the marking change `gamma` (rows of `Pi` transform as `gamma Pi`).
    pub fn act(&self, gamma: &IMat4) -> Result<Self> {
        let marking = self.marking.act(gamma);
        Self::assemble(self.curve.clone(), marking, self.segment_periods)
    }

    /// The same periods in the layout with rows = forms `(omega, eta)` and
    /// columns = cycles `(A1, A2, B1, B2)`.
    pub fn forms_by_cycles(&self) -> Matrix4C {
        let (bw, be, aw, ae) = blocks(&self.pi);
        from_blocks(&aw.transpose(), &bw.transpose(), &ae.transpose(), &be.transpose())
    }
}

/// Derivatives of the periods under moving one finite branch point of a
/// monic quintic.
#[derive(Clone, Debug)]
pub struct RauchVariation {
    /// `d/de_k` of `((Pi_A(omega), -Pi_A(eta)), (Pi_B(omega), -Pi_B(eta)))`.
    pub block: Matrix4C,
    /// `d/de_k` of `Pi` in the layout of `PeriodData::pi`.
    pub pi: Matrix4C,
    pub tau: Matrix2C,
}

/// Expresses `P(x) dx/2y` with `deg P <= 3` in the basis `(omega1, omega2, eta1, eta2)`
/// of a monic quintic.
fn reduce_cubic(p: &[Complex64; 4], b1: Complex64, b2: Complex64) -> [Complex64; 4] {
    // x^3 = (eta1 - 2 b1 eta2 - b2 omega2)/3, x^2 = eta2.
    let c3 = p[3] / 3.0;
    [p[0], p[1] - c3 * b2, c3, p[2] - c3 * b1 * 2.0]
}

/// Rauch variation obtained by reducing `d/de_k` of each form modulo exact
/// differentials: `dx/(2y (x - e)) = Q(x) dx/(2y f'(e)) + d(...)`.
pub fn rauch_variation(pd: &PeriodData, k: usize) -> Result<RauchVariation> {
    let curve = &pd.curve;
    if curve.model() == Model::Sextic || (curve.leading() - ONE).norm() > 1e-12 {
        return Err(Error::ModelMismatch("Rauch variation needs a monic quintic".into()));
    }
    let roots = curve.roots();
    if k >= roots.len() {
        return Err(Error::InvalidInput("branch point index out of range".into()));
    }
    let e = roots[k];
    let f = curve.poly();
    let b1 = f.c[4];
    let b2 = f.c[3];
    let others: Vec<Complex64> = roots.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, r)| *r).collect();
    let g = Poly::from_roots(ONE, &others);
    let fp = g.eval(e);
    // Q(x) = ((x - e) g'(x) - g(x) + g(e)) / (x - e).
    let xe = Poly::new(vec![-e, ONE]);
    let num = xe.mul(&g.derivative()).add(&g.scale(-ONE)).add(&Poly::new(vec![g.eval(e)]));
    let q = divide_linear(&num, e);
    let nums = form_numerators(curve);
    // df/de_k = -g, so d b1 = -g4 and d b2 = -g3.
    let db1 = -g.c[4];
    let db2 = -g.c[3];
    let mut d = Matrix4C::zeros();
    for (col, p) in nums.iter().enumerate() {
        let pe = p.eval(e);
        let quot = divide_linear(&p.add(&Poly::new(vec![-pe])), e);
        let mut total = [ZERO; 4];
        for i in 0..4 {
            let qi = q.c.get(i).copied().unwrap_or(ZERO);
            let pq = quot.c.get(i).copied().unwrap_or(ZERO);
            total[i] = (pq + pe * qi / fp) * 0.5;
        }
        if col == 2 {
            total[2] += db1 * 2.0;
            total[1] += db2;
        }
        let red = reduce_cubic(&total, b1, b2);
        for m in 0..4 {
            d[(m, col)] = red[m];
        }
    }
    let dpi = pd.pi * d;
    let (dbw, dbe, daw, dae) = blocks(&dpi);
    let block = from_blocks(&daw, &(-dae), &dbw, &(-dbe));
    let aw_inv = inv2(&pd.pi_a_omega())?;
    let dtau = (dbw - pd.tau * daw) * aw_inv;
    Ok(RauchVariation { block, pi: dpi, tau: dtau })
}

/// Quotient of `p` by `(x - e)` (remainder discarded).
fn divide_linear(p: &Poly, e: Complex64) -> Poly {
    let n = p.c.len();
    if n <= 1 {
        return Poly::new(vec![ZERO]);
    }
    let mut q = vec![ZERO; n - 1];
    let mut carry = ZERO;
    for k in (1..n).rev() {
        carry = p.c[k] + carry * e;
        q[k - 1] = carry;
    }
    Poly::new(q)
}

/// The variation formula in the form with `U(x) = (1, x)` and the displayed
/// `alpha_k, beta_k, gamma_k` blocks; kept for comparison with
/// `rauch_variation`.
pub fn rauch_variation_displayed(pd: &PeriodData, k: usize) -> Result<RauchVariation> {
    let curve = &pd.curve;
    if curve.model() == Model::Sextic || (curve.leading() - ONE).norm() > 1e-12 {
        return Err(Error::ModelMismatch("Rauch variation needs a monic quintic".into()));
    }
    let roots = curve.roots();
    let e = roots[k];
    let f = curve.poly();
    let fp = f.derivative().eval(e);
    // b_j with b_0 = 1 and b_j = 0 for j < 0.
    let b = |j: i32| -> Complex64 {
        if j < 0 {
            ZERO
        } else {
            f.c[(5 - j) as usize]
        }
    };
    let u = [ONE, e];
    let v1: Complex64 = (1..=4).map(|l| b(3 - l) * e.powi(l) * l as f64).sum();
    let v2: Complex64 = (2..=3).map(|l| b(2 - l) * e.powi(l) * (l - 1) as f64).sum::<Complex64>() * 4.0;
    let v = [v1, v2];
    let mut alpha = Matrix2C::zeros();
    let mut beta = Matrix2C::zeros();
    let mut gamma = Matrix2C::zeros();
    for i in 0..2 {
        for j in 0..2 {
            alpha[(i, j)] = -(u[i] * v[j] / fp) * 0.5;
            beta[(i, j)] = -(u[i] * u[j] / fp) * 2.0;
            gamma[(i, j)] = v[i] * v[j] / fp / 8.0;
        }
    }
    alpha[(1, 0)] += cr(0.5);
    let w = [[v1 / e, v1 / e], [v1 / e, v2 / (e * e)]];
    for i in 0..2 {
        for j in 0..2 {
            gamma[(i, j)] -= e * w[i][j] / 8.0;
        }
    }
    gamma[(0, 0)] -= v1 / e / 8.0;
    gamma[(1, 1)] -= v2 / (e * e) / 8.0;
    let mm = from_blocks(&alpha.transpose(), &gamma.transpose(), &beta.transpose(), &(-alpha));
    let (bw, be, aw, ae) = blocks(&pd.pi);
    let base = from_blocks(&aw, &(-ae), &bw, &(-be));
    let block = base * mm;
    let aw_inv = inv2(&aw)?;
    let dtau = aw_inv * beta.transpose() * aw_inv.transpose() * Complex64::new(0.0, 2.0 * PI);
    let (daw, mdae, dbw, mdbe) = blocks(&block);
    let dpi = from_blocks(&dbw, &(-mdbe), &daw, &(-mdae));
    Ok(RauchVariation { block, pi: dpi, tau: dtau })
}
