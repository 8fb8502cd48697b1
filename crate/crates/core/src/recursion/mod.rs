//! Eynard-Orantin recursion on the mirror curve.
//!
//! Correlators are stored as coefficients of products of the basis
//! differentials `phi_{b,k}(p) = Res_{w -> b} B(p, w) w^{-k-1}`, which have a
//! pole of order `k + 2` at the branch point `b` and are holomorphic elsewhere.
//! Each recursion step contracts lower correlators against per-branch-point
//! residue tables `Res kappa_k f_u g_v`, where `kappa_k` is the recursion
//! kernel paired with `phi_{a,k}` and `f_u`, `g_v` run over the local
//! expansions of the basis at `p` and at `p*`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curve::HyperellipticCurve;
use crate::error::{Error, Result};
use crate::kernels::{g6, quasi_period_term, KernelChoice, KernelExpansion};
use crate::mirror::{delta_lambda_series, mirror_sextic, MirrorModuli};
use crate::numerics::{LaurentSeries, Matrix2C};
use crate::periods::{compute, PeriodData};

pub mod genus_one;
pub use genus_one::{f1, GenusOneForms};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const NB: usize = 6;

/// Per-argument pole bound `6g + 2n - 4`.
pub fn pole_bound(g: usize, n: usize) -> usize {
    (6 * g + 2 * n).saturating_sub(4)
}

/// Bound `6g + 4n - 6` on the total pole order of a term.
pub fn total_pole_bound(g: usize, n: usize) -> usize {
    (6 * g + 4 * n).saturating_sub(6)
}

/// `omega_{g,n} = sum C[k; b] prod_i phi_{b_i, k_i}(p_i)`.
#[derive(Clone, Debug)]
pub struct CorrelatorAtlas {
    pub g: usize,
    pub n: usize,
    pub kernel: KernelChoice,
    /// `k`-vectors to coefficients over ramification vectors `b`, `6^n`
    /// entries with the first slot most significant.
    pub blocks: BTreeMap<Vec<u8>, Vec<Complex64>>,
    /// Largest coefficient carrying an odd `k`, relative to the largest
    /// coefficient; such terms cancel in exact arithmetic and are dropped.
    pub odd_residual: f64,
}

/// One nonzero coefficient: `(b_i, m_i)` per slot with `k_i = 2 m_i`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AtlasEntry {
    pub slots: Vec<(u8, u8)>,
    pub value: Complex64,
}

fn b_digits(mut idx: usize, n: usize) -> Vec<usize> {
    let mut d = vec![0; n];
    for i in (0..n).rev() {
        d[i] = idx % NB;
        idx /= NB;
    }
    d
}

impl CorrelatorAtlas {
    fn empty(g: usize, n: usize, kernel: KernelChoice) -> Self {
        Self { g, n, kernel, blocks: BTreeMap::new(), odd_residual: 0.0 }
    }

    pub fn max_abs(&self) -> f64 {
        self.blocks.values().flat_map(|v| v.iter().map(|c| c.norm())).fold(0.0, f64::max)
    }

    pub fn entries(&self, rel_tol: f64) -> Vec<AtlasEntry> {
        let cut = rel_tol * self.max_abs();
        let mut out = Vec::new();
        for (k, data) in &self.blocks {
            for (i, c) in data.iter().enumerate() {
                if c.norm() > cut {
                    let b = b_digits(i, self.n);
                    let slots = b.iter().zip(k).map(|(&b, &k)| (b as u8, k / 2)).collect();
                    out.push(AtlasEntry { slots, value: *c });
                }
            }
        }
        out
    }

    /// `(largest pole order in one argument, largest total pole order)` over
    /// coefficients above `rel_tol` times the largest.
    pub fn pole_orders(&self, rel_tol: f64) -> (usize, usize) {
        let cut = rel_tol * self.max_abs();
        let mut per = 0;
        let mut total = 0;
        for (k, data) in &self.blocks {
            if data.iter().any(|c| c.norm() > cut) {
                per = per.max(k.iter().map(|&k| k as usize + 2).max().unwrap_or(0));
                total = total.max(k.iter().map(|&k| k as usize + 2).sum());
            }
        }
        (per, total)
    }

    fn add_block(&mut self, k: Vec<u8>, idx: usize, v: Complex64) {
        let len = NB.pow(self.n as u32);
        self.blocks.entry(k).or_insert_with(|| vec![ZERO; len])[idx] += v;
    }

    fn merge(&mut self, other: BTreeMap<Vec<u8>, Vec<Complex64>>) {
        for (k, v) in other {
            match self.blocks.get_mut(&k) {
                Some(cur) => cur.iter_mut().zip(v).for_each(|(a, b)| *a += b),
                None => {
                    self.blocks.insert(k, v);
                }
            }
        }
    }

    /// Drops odd-`k` blocks (recording their size) and blocks that vanish identically.
    fn finish(&mut self) {
        let max = self.max_abs().max(f64::MIN_POSITIVE);
        let mut odd: f64 = 0.0;
        self.blocks.retain(|k, v| {
            let m = v.iter().map(|c| c.norm()).fold(0.0, f64::max);
            if k.iter().any(|k| k % 2 == 1) {
                odd = odd.max(m / max);
                false
            } else {
                m > 0.0
            }
        });
        self.odd_residual = odd;
    }

    /// Multiplies every coefficient by `s`.
    pub fn scaled(&self, s: Complex64) -> Self {
        let mut out = self.clone();
        out.blocks.values_mut().for_each(|v| v.iter_mut().for_each(|c| *c *= s));
        out
    }
}

/// Residue tables at one branch point.
struct ResidueTable {
    /// `Res kappa_k f_u g_v` for even `k`, indexed `[k/2][(u, v)]`.
    r: Vec<DMatrix<Complex64>>,
    /// `Res kappa_k B(p, p*)`.
    involution: Vec<Complex64>,
    /// `Res (int_p^{p*} lambda) phi_u` for the basis part of `u`.
    lambda_int: Vec<Complex64>,
}

/// The mirror curve with its kernel, local expansions and residue tables.
pub struct SpectralCurve {
    pub moduli: MirrorModuli,
    pub periods: PeriodData,
    pub kernel: KernelChoice,
    /// Non-holomorphic term added to the quasi-periods (zero for Bergman).
    pub y: Matrix2C,
    pub quasi: Matrix2C,
    /// Largest `k` in the basis.
    pub kcap: usize,
    /// Series truncation order in the local coordinates.
    pub order: usize,
    pub expansion: KernelExpansion,
    pub delta_lambda: Vec<LaurentSeries>,
    tables: Vec<ResidueTable>,
}

fn dot_residue(p: &LaurentSeries, g: &LaurentSeries) -> Result<Complex64> {
    let lo = p.lead_order();
    let hi = -1 - g.lead_order();
    if lo > hi {
        return Ok(ZERO);
    }
    if hi >= p.trunc_order() || -1 - lo >= g.trunc_order() {
        return Err(Error::TruncationTooShallow { needed: hi.max(-1 - lo) + 1, available: p.trunc_order().min(g.trunc_order()) });
    }
    let mut acc = ZERO;
    for i in lo..=hi {
        acc += p.at(i) * g.at(-1 - i);
    }
    Ok(acc)
}

impl SpectralCurve {
    /// Curve prepared for correlators with `g <= gmax`, `n <= nmax`.
    pub fn new(moduli: MirrorModuli, kernel: KernelChoice, gmax: usize, nmax: usize) -> Result<Self> {
        let curve = mirror_sextic(&moduli)?;
        let periods = compute(&curve)?;
        let y = match kernel {
            KernelChoice::Bergman => Matrix2C::zeros(),
            KernelChoice::Schiffer => periods.nonholomorphic_y(),
        };
        Self::with_y(moduli, periods, kernel, y, gmax, nmax)
    }

    /// As `new` with given periods and an explicit non-holomorphic term.
    pub fn with_y(moduli: MirrorModuli, periods: PeriodData, kernel: KernelChoice, y: Matrix2C, gmax: usize, nmax: usize) -> Result<Self> {
        let kcap = pole_bound(gmax, nmax.max(1)).max(2);
        let order = 2 * kcap + 8;
        match Self::build(moduli, periods.clone(), kernel, y, kcap, order) {
            Err(Error::TruncationTooShallow { .. }) => Self::build(moduli, periods, kernel, y, kcap, 2 * order),
            r => r,
        }
    }

    fn build(moduli: MirrorModuli, periods: PeriodData, kernel: KernelChoice, y: Matrix2C, kcap: usize, order: usize) -> Result<Self> {
        let quasi = quasi_period_term(&periods, KernelChoice::Bergman) + y;
        let deg = order + kcap + 4;
        let expansion = KernelExpansion::new(&periods.curve, quasi, deg)?;
        let delta_lambda: Vec<LaurentSeries> =
            expansion.charts.iter().map(|ch| delta_lambda_series(&moduli, ch, order + 2)).collect::<Result<_>>()?;
        let tables = (0..NB)
            .into_par_iter()
            .map(|a| Self::table(&expansion, &delta_lambda[a], a, kcap, order))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { moduli, periods, kernel, y, quasi, kcap, order, expansion, delta_lambda, tables })
    }

    pub fn curve(&self) -> &HyperellipticCurve {
        &self.periods.curve
    }

    fn nb(&self) -> usize {
        self.kcap + 1
    }

    fn table(ex: &KernelExpansion, dl: &LaurentSeries, a: usize, kcap: usize, order: usize) -> Result<ResidueTable> {
        let nb = kcap + 1;
        let t = order as i32;
        let mut f: Vec<LaurentSeries> = Vec::with_capacity(7 * nb);
        for b in 0..NB {
            for k in 0..nb {
                f.push(ex.basis_series(a, b, k).truncate(t));
            }
        }
        for l in 0..nb {
            f.push(LaurentSeries::monomial(l as i32, ONE, t));
        }
        let g: Vec<LaurentSeries> = f.iter().map(|s| s.reflect().scale(-ONE)).collect();
        let inv_dl = dl.invert()?;
        let invol = ex.involution_series(a).truncate(t);
        let mut r = Vec::new();
        let mut involution = Vec::new();
        for k in (0..=kcap).step_by(2) {
            let kappa = inv_dl.shift(k as i32 + 1).scale(Complex64::new(-1.0 / (k + 1) as f64, 0.0));
            let pk: Vec<LaurentSeries> = f.iter().map(|s| &kappa * s).collect();
            let mut m = DMatrix::from_element(f.len(), f.len(), ZERO);
            for (u, p) in pk.iter().enumerate() {
                for (v, gv) in g.iter().enumerate() {
                    m[(u, v)] = dot_residue(p, gv)?;
                }
            }
            r.push(m);
            involution.push(dot_residue(&kappa, &invol)?);
        }
        let big_lambda = dl.primitive()?.scale(-ONE);
        let lambda_int = f[..NB * nb].iter().map(|s| dot_residue(&big_lambda, s)).collect::<Result<_>>()?;
        Ok(ResidueTable { r, involution, lambda_int })
    }

    /// Values `phi_{b,k}(p)` against `dx/2y` for `k <= kcap`, indexed `[b][k]`.
    pub fn basis_values(&self, x: Complex64, y: Complex64) -> Result<Vec<Vec<Complex64>>> {
        (0..NB).map(|b| self.expansion.basis_values(b, x, y, self.nb())).collect()
    }
}

/// A correlator with one slot contracted, grouped by the remaining `k`-vector.
struct Group {
    rest: Vec<u8>,
    /// Global basis index for each column.
    cols: Vec<usize>,
    /// Rows: ramification vector of the remaining slots.
    m: DMatrix<Complex64>,
}

fn first_slot_groups(at: &CorrelatorAtlas, nb: usize) -> Vec<Group> {
    let rows = NB.pow(at.n as u32 - 1);
    let mut by_rest: BTreeMap<Vec<u8>, Vec<(u8, &Vec<Complex64>)>> = BTreeMap::new();
    for (k, v) in &at.blocks {
        by_rest.entry(k[1..].to_vec()).or_default().push((k[0], v));
    }
    by_rest
        .into_iter()
        .map(|(rest, list)| {
            let mut cols = Vec::new();
            let mut m = DMatrix::from_element(rows, list.len() * NB, ZERO);
            for (j, (k0, data)) in list.iter().enumerate() {
                for b0 in 0..NB {
                    cols.push(b0 * nb + *k0 as usize);
                    for r in 0..rows {
                        m[(r, j * NB + b0)] = data[b0 * rows + r];
                    }
                }
            }
            Group { rest, cols, m }
        })
        .collect()
}

/// `B(p, p_j) = sum_l z^l phi_{a,l}(p_j)` at branch point `a`.
fn omega02_groups(a: usize, nb: usize) -> Vec<Group> {
    (0..nb)
        .map(|l| {
            let mut m = DMatrix::from_element(NB, 1, ZERO);
            m[(a, 0)] = ONE;
            Group { rest: vec![l as u8], cols: vec![NB * nb + l], m }
        })
        .collect()
}

/// Groups with the first two slots contracted; columns are `(u, v)` pairs.
fn two_slot_groups(at: &CorrelatorAtlas, nb: usize) -> Vec<(Vec<u8>, Vec<(usize, usize)>, DMatrix<Complex64>)> {
    let rows = NB.pow(at.n as u32 - 2);
    let mut by_rest: BTreeMap<Vec<u8>, Vec<(u8, u8, &Vec<Complex64>)>> = BTreeMap::new();
    for (k, v) in &at.blocks {
        by_rest.entry(k[2..].to_vec()).or_default().push((k[0], k[1], v));
    }
    by_rest
        .into_iter()
        .map(|(rest, list)| {
            let mut cols = Vec::new();
            let mut m = DMatrix::from_element(rows, list.len() * NB * NB, ZERO);
            for (j, (k0, k1, data)) in list.iter().enumerate() {
                for b0 in 0..NB {
                    for b1 in 0..NB {
                        let c = j * NB * NB + b0 * NB + b1;
                        cols.push((b0 * nb + *k0 as usize, b1 * nb + *k1 as usize));
                        for r in 0..rows {
                            m[(r, c)] = data[(b0 * NB + b1) * rows + r];
                        }
                    }
                }
            }
            (rest, cols, m)
        })
        .collect()
}

fn submatrix(r: &DMatrix<Complex64>, rows: &[usize], cols: &[usize]) -> DMatrix<Complex64> {
    DMatrix::from_fn(rows.len(), cols.len(), |i, j| r[(rows[i], cols[j])])
}

/// Free energy `omega_{g,0}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FreeEnergy {
    pub g: usize,
    /// `sum_a Res (int_p^{p*} lambda) omega_{g,1}(p)`.
    pub value: Complex64,
    /// `-value / (2 (2 - 2g))`, the normalization with `Res Phi omega_{g,1} / (2 - 2g)`.
    pub eo_normalized: Complex64,
    pub kernel: KernelChoice,
}

/// Memoized recursion on one spectral curve.
pub struct Recursion {
    pub curve: SpectralCurve,
    cache: HashMap<(usize, usize), Arc<CorrelatorAtlas>>,
}

impl Recursion {
    pub fn new(curve: SpectralCurve) -> Self {
        Self { curve, cache: HashMap::new() }
    }

    /// `omega_{g,n}` for `2g - 2 + n > 0`, `n >= 1`.
    pub fn omega(&mut self, g: usize, n: usize) -> Result<Arc<CorrelatorAtlas>> {
        if n == 0 || 2 * g + n <= 2 {
            return Err(Error::InvalidInput(format!("omega_{{{g},{n}}} is not produced by the recursion")));
        }
        if pole_bound(g, n) > self.curve.kcap {
            return Err(Error::InvalidInput(format!("omega_{{{g},{n}}} exceeds the prepared basis (k <= {})", self.curve.kcap)));
        }
        if let Some(a) = self.cache.get(&(g, n)) {
            return Ok(a.clone());
        }
        if g >= 1 && !(g == 1 && n == 1) {
            self.omega(g - 1, n + 1)?;
        }
        for g1 in 0..=g {
            for j in 0..n {
                let (n1, n2) = (j + 1, n - j);
                for (gg, nn) in [(g1, n1), (g - g1, n2)] {
                    if 2 * gg + nn > 2 && (gg, nn) != (g, n) {
                        self.omega(gg, nn)?;
                    }
                }
            }
        }
        let at = Arc::new(self.compute(g, n)?);
        self.cache.insert((g, n), at.clone());
        Ok(at)
    }

    fn factor(&self, g: usize, n: usize, a: usize) -> Option<Vec<Group>> {
        let nb = self.curve.nb();
        if (g, n) == (0, 2) {
            Some(omega02_groups(a, nb))
        } else if 2 * g + n <= 2 {
            None
        } else {
            self.cache.get(&(g, n)).map(|at| first_slot_groups(at, nb))
        }
    }

    fn compute(&self, g: usize, n: usize) -> Result<CorrelatorAtlas> {
        let sc = &self.curve;
        let nb = sc.nb();
        let rest_n = n - 1;
        let kmax = pole_bound(g, n) + 2;
        let ks: Vec<usize> = (0..=kmax.min(sc.kcap)).step_by(2).collect();
        let partials: Vec<BTreeMap<Vec<u8>, Vec<Complex64>>> = (0..NB)
            .into_par_iter()
            .map(|a| {
                let tab = &sc.tables[a];
                let mut out = CorrelatorAtlas::empty(g, n, sc.kernel);
                // omega_{g-1,n+1}(p, p*, ...).
                if g >= 1 {
                    if (g, n) == (1, 1) {
                        for &k in &ks {
                            out.add_block(vec![k as u8], a, tab.involution[k / 2]);
                        }
                    } else {
                        let w = &self.cache[&(g - 1, n + 1)];
                        for (rest, cols, m) in two_slot_groups(w, nb) {
                            for &k in &ks {
                                let r = &tab.r[k / 2];
                                let rv = DMatrix::from_fn(cols.len(), 1, |i, _| r[cols[i]]);
                                let vals = &m * rv;
                                let mut key = rest.clone();
                                key.push(k as u8);
                                for (row, v) in vals.iter().enumerate() {
                                    if *v != ZERO {
                                        out.add_block(key.clone(), row * NB + a, *v);
                                    }
                                }
                            }
                        }
                    }
                }
                // Products over splittings of the remaining slots.
                for g1 in 0..=g {
                    for mask in 0u32..(1 << rest_n) {
                        let jn = mask.count_ones() as usize;
                        let (n1, n2) = (jn + 1, rest_n - jn + 1);
                        if 2 * g1 + n1 < 2 || 2 * (g - g1) + n2 < 2 {
                            continue;
                        }
                        let (Some(f1), Some(f2)) = (self.factor(g1, n1, a), self.factor(g - g1, n2, a)) else {
                            continue;
                        };
                        let jpos: Vec<usize> = (0..rest_n).filter(|i| mask >> i & 1 == 1).collect();
                        let kpos: Vec<usize> = (0..rest_n).filter(|i| mask >> i & 1 == 0).collect();
                        let (r1, r2) = (NB.pow(jpos.len() as u32), NB.pow(kpos.len() as u32));
                        let mut index = vec![0usize; r1 * r2];
                        for i1 in 0..r1 {
                            let d1 = b_digits(i1, jpos.len());
                            for i2 in 0..r2 {
                                let d2 = b_digits(i2, kpos.len());
                                let mut full = vec![0; rest_n];
                                jpos.iter().zip(&d1).for_each(|(p, d)| full[*p] = *d);
                                kpos.iter().zip(&d2).for_each(|(p, d)| full[*p] = *d);
                                index[i1 * r2 + i2] = full.iter().fold(0, |acc, d| acc * NB + d) * NB + a;
                            }
                        }
                        for &k in &ks {
                            let r = &tab.r[k / 2];
                            for g1p in &f1 {
                                for g2p in &f2 {
                                    let rs = submatrix(r, &g1p.cols, &g2p.cols);
                                    if rs.iter().all(|v| *v == ZERO) {
                                        continue;
                                    }
                                    let o = &g1p.m * rs * g2p.m.transpose();
                                    let mut key = vec![0u8; rest_n];
                                    jpos.iter().zip(&g1p.rest).for_each(|(p, kk)| key[*p] = *kk);
                                    kpos.iter().zip(&g2p.rest).for_each(|(p, kk)| key[*p] = *kk);
                                    key.push(k as u8);
                                    let len = NB.pow(n as u32);
                                    let block = out.blocks.entry(key).or_insert_with(|| vec![ZERO; len]);
                                    for i1 in 0..r1 {
                                        for i2 in 0..r2 {
                                            block[index[i1 * r2 + i2]] += o[(i1, i2)];
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
                out.blocks
            })
            .collect();
        let mut at = CorrelatorAtlas::empty(g, n, sc.kernel);
        for p in partials {
            at.merge(p);
        }
        at.finish();
        Ok(at)
    }

    /// `omega_{g,0}` for `g >= 2`.
    pub fn free_energy(&mut self, g: usize) -> Result<FreeEnergy> {
        if g < 2 {
            return Err(Error::InvalidInput("free energies from the recursion need g >= 2".into()));
        }
        let w = self.omega(g, 1)?;
        let nb = self.curve.nb();
        let mut value = ZERO;
        for tab in &self.curve.tables {
            for (k, data) in &w.blocks {
                for (b, c) in data.iter().enumerate() {
                    value += c * tab.lambda_int[b * nb + k[0] as usize];
                }
            }
        }
        let eo = -value / (2.0 * (2.0 - 2.0 * g as f64));
        Ok(FreeEnergy { g, value, eo_normalized: eo, kernel: self.curve.kernel })
    }

    /// Evaluates a correlator at finite points `(x_i, y_i)` against `prod dx_i/2y_i`.
    pub fn evaluate(&self, at: &CorrelatorAtlas, points: &[(Complex64, Complex64)]) -> Result<Complex64> {
        evaluate_with(&self.curve, at, points)
    }
}

pub fn evaluate_with(sc: &SpectralCurve, at: &CorrelatorAtlas, points: &[(Complex64, Complex64)]) -> Result<Complex64> {
    if points.len() != at.n {
        return Err(Error::InvalidInput(format!("{} points for a correlator with {} arguments", points.len(), at.n)));
    }
    let vals: Vec<Vec<Vec<Complex64>>> = points.iter().map(|(x, y)| sc.basis_values(*x, *y)).collect::<Result<_>>()?;
    let mut acc = ZERO;
    for (k, data) in &at.blocks {
        for (i, c) in data.iter().enumerate() {
            if *c == ZERO {
                continue;
            }
            let b = b_digits(i, at.n);
            let mut term = *c;
            for s in 0..at.n {
                term *= vals[s][b[s]][k[s] as usize];
            }
            acc += term;
        }
    }
    Ok(acc)
}

/// `sum_k r_k h(r_k)/4 prod_i (G6(x_i, r_k)/(x_i - r_k)^2 - (1, x_i) K (1, r_k)^t)`
/// with `K` the curve's quasi-period term, against `prod dx_i/2y_i`.
pub fn omega03_closed_form(sc: &SpectralCurve, xs: [Complex64; 3]) -> Complex64 {
    omega03_weighted(sc, xs, |r, h, _| r * h / 4.0)
}

/// The residue computation of `omega_{0,3}` in closed form:
/// the same products weighted by `-r_k h(r_k) / (2 f'(r_k)^2)`.
pub fn omega03_residue_form(sc: &SpectralCurve, xs: [Complex64; 3]) -> Complex64 {
    omega03_weighted(sc, xs, |r, h, fp| -r * h / (fp * fp * 2.0))
}

fn omega03_weighted<F: Fn(Complex64, Complex64, Complex64) -> Complex64>(sc: &SpectralCurve, xs: [Complex64; 3], w: F) -> Complex64 {
    let curve = sc.curve();
    let a = curve.sextic_form();
    let h = sc.moduli.h();
    let fp = curve.poly().derivative();
    let q = &sc.quasi;
    let mut acc = ZERO;
    for &r in curve.roots() {
        let mut prod = w(r, h.eval(r), fp.eval(r));
        for &x in &xs {
            let d = x - r;
            let quasi = q[(0, 0)] + q[(0, 1)] * r + q[(1, 0)] * x + q[(1, 1)] * x * r;
            prod *= g6(&a, x, r) / (d * d) - quasi;
        }
        acc += prod;
    }
    acc
}

/// Least-squares fits of a free energy as a polynomial in the entries `(Y11, Y12, Y22)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct YFit {
    pub g: usize,
    pub samples: usize,
    /// Relative residual of the best fit of total degree `d`, for `d = 0, 1, ...`.
    pub residuals: Vec<f64>,
    /// Smallest degree whose residual is below the tolerance.
    pub degree: Option<usize>,
}

fn monomials3(deg: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for d in 0..=deg {
        for i in 0..=d {
            for j in 0..=d - i {
                out.push([i, j, d - i - j]);
            }
        }
    }
    out
}

/// Samples `F_g` with the non-holomorphic term set to random symmetric `Y`
/// of size comparable to the quasi-periods and fits polynomials of degree
/// `0..=max_degree`.
pub fn fit_y_dependence<R: rand::Rng>(
    moduli: MirrorModuli,
    periods: &PeriodData,
    g: usize,
    samples: usize,
    max_degree: usize,
    tolerance: f64,
    rng: &mut R,
) -> Result<YFit> {
    let scale = periods.kappa().norm().max(1e-3);
    let mut pts = Vec::with_capacity(samples);
    let mut vals = Vec::with_capacity(samples);
    for _ in 0..samples {
        let mut u = [ZERO; 3];
        for v in &mut u {
            *v = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
        let y = Matrix2C::new(u[0], u[1], u[1], u[2]) * Complex64::new(scale, 0.0);
        let sc = SpectralCurve::with_y(moduli, periods.clone(), KernelChoice::Schiffer, y, g, 1)?;
        vals.push(Recursion::new(sc).free_energy(g)?.value);
        pts.push(u);
    }
    let b = DMatrix::from_fn(samples, 1, |i, _| vals[i]);
    let bn = b.norm();
    let mut residuals = Vec::new();
    let mut degree = None;
    for d in 0..=max_degree {
        let mons = monomials3(d);
        if mons.len() >= samples {
            break;
        }
        let a = DMatrix::from_fn(samples, mons.len(), |i, j| {
            let [p, q, r] = mons[j];
            pts[i][0].powu(p as u32) * pts[i][1].powu(q as u32) * pts[i][2].powu(r as u32)
        });
        let coef = a.clone().svd(true, true).solve(&b, 1e-14).map_err(|e| Error::InvalidInput(e.into()))?;
        let res = (a * coef - &b).norm() / bn;
        if degree.is_none() && res < tolerance {
            degree = Some(d);
        }
        residuals.push(res);
    }
    Ok(YFit { g, samples, residuals, degree })
}
