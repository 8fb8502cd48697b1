//! Genus-two hyperelliptic curve models, model changes and Igusa invariants.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::poly::{check_distinct, ROOT_SEPARATION};
use crate::numerics::{cr, Poly};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    /// `Y^2 = a0 X^6 + a1 X^5 + ... + a6`.
    Sextic,
    /// `y^2 = b0 x^5 + b1 x^4 + ... + b5`, one branch point at infinity.
    Quintic,
    /// `y^2 = x (x - 1)(x - l1)(x - l2)(x - l3)`.
    Rosenhain,
}

/// A smooth genus-two curve `y^2 = f(x)` with `f` of degree 5 or 6.
#[derive(Clone, Debug, PartialEq)]
pub struct HyperellipticCurve {
    model: Model,
    coeffs: Vec<Complex64>,
    roots: Vec<Complex64>,
}

impl HyperellipticCurve {
    /// Sextic from `a0..a6`; roots are found numerically and sorted.
    pub fn sextic(a: &[Complex64]) -> Result<Self> {
        if a.len() != 7 {
            return Err(Error::InvalidInput(format!("sextic needs 7 coefficients, got {}", a.len())));
        }
        if a[0].norm() == 0.0 {
            return Err(Error::LeadingCoefficientZero);
        }
        let roots = Poly::from_descending(a).roots()?;
        Ok(Self { model: Model::Sextic, coeffs: a.to_vec(), roots })
    }

    /// Quintic from `b0..b5`.
    pub fn quintic(b: &[Complex64]) -> Result<Self> {
        if b.len() != 6 {
            return Err(Error::InvalidInput(format!("quintic needs 6 coefficients, got {}", b.len())));
        }
        if b[0].norm() == 0.0 {
            return Err(Error::LeadingCoefficientZero);
        }
        let roots = Poly::from_descending(b).roots()?;
        Ok(Self { model: Model::Quintic, coeffs: b.to_vec(), roots })
    }

    /// Rosenhain model from `(l1, l2, l3)`.
    pub fn rosenhain(l: &[Complex64]) -> Result<Self> {
        if l.len() != 3 {
            return Err(Error::InvalidInput(format!("Rosenhain model needs 3 parameters, got {}", l.len())));
        }
        let roots = vec![ZERO, ONE, l[0], l[1], l[2]];
        check_distinct(&roots, ROOT_SEPARATION)?;
        Ok(Self { model: Model::Rosenhain, coeffs: l.to_vec(), roots })
    }

    /// Sextic `a0 prod (X - r_k)` keeping the supplied root order.
    pub fn sextic_from_roots(a0: Complex64, roots: &[Complex64]) -> Result<Self> {
        if roots.len() != 6 {
            return Err(Error::InvalidInput("sextic needs 6 roots".into()));
        }
        if a0.norm() == 0.0 {
            return Err(Error::LeadingCoefficientZero);
        }
        check_distinct(roots, ROOT_SEPARATION)?;
        let coeffs = Poly::from_roots(a0, roots).descending(6);
        Ok(Self { model: Model::Sextic, coeffs, roots: roots.to_vec() })
    }

    /// Quintic `b0 prod (x - e_k)` keeping the supplied root order.
    pub fn quintic_from_roots(b0: Complex64, roots: &[Complex64]) -> Result<Self> {
        if roots.len() != 5 {
            return Err(Error::InvalidInput("quintic needs 5 roots".into()));
        }
        if b0.norm() == 0.0 {
            return Err(Error::LeadingCoefficientZero);
        }
        check_distinct(roots, ROOT_SEPARATION)?;
        let coeffs = Poly::from_roots(b0, roots).descending(5);
        Ok(Self { model: Model::Quintic, coeffs, roots: roots.to_vec() })
    }

    /// Builds a model from its tag and coefficient list.
    pub fn from_model(model: Model, coeffs: &[Complex64]) -> Result<Self> {
        match model {
            Model::Sextic => Self::sextic(coeffs),
            Model::Quintic => Self::quintic(coeffs),
            Model::Rosenhain => Self::rosenhain(coeffs),
        }
    }

    pub fn model(&self) -> Model {
        self.model
    }

    /// Coefficients as supplied: `a0..a6`, `b0..b5` or `l1..l3`.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Finite branch points.
    pub fn roots(&self) -> &[Complex64] {
        &self.roots
    }

    /// Degree of `f`.
    pub fn degree(&self) -> usize {
        self.roots.len()
    }

    /// Leading coefficient of `f`.
    pub fn leading(&self) -> Complex64 {
        match self.model {
            Model::Sextic | Model::Quintic => self.coeffs[0],
            Model::Rosenhain => ONE,
        }
    }

    /// `f` as a polynomial (ascending coefficients).
    pub fn poly(&self) -> Poly {
        match self.model {
            Model::Sextic | Model::Quintic => Poly::from_descending(&self.coeffs),
            Model::Rosenhain => Poly::from_roots(ONE, &self.roots),
        }
    }

    /// Coefficients in sextic form `a0..a6` (with `a0 = 0` for degree 5).
    pub fn sextic_form(&self) -> [Complex64; 7] {
        let d = self.poly().descending(6);
        [d[0], d[1], d[2], d[3], d[4], d[5], d[6]]
    }

    pub fn f(&self, x: Complex64) -> Complex64 {
        self.poly().eval(x)
    }

    /// The same curve with its roots listed in another order.
    pub fn reordered(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.roots.len() {
            return Err(Error::InvalidInput("permutation length mismatch".into()));
        }
        let mut seen = vec![false; perm.len()];
        for &p in perm {
            if p >= perm.len() || seen[p] {
                return Err(Error::InvalidInput("not a permutation".into()));
            }
            seen[p] = true;
        }
        let roots = perm.iter().map(|&i| self.roots[i]).collect();
        Ok(Self { model: self.model, coeffs: self.coeffs.clone(), roots })
    }

    /// A sextic isomorphic to this curve: for degree-5 models the branch point
    /// at infinity is moved to `X = 0` by `X = 1/(x - t)`.
    pub fn sextic_closure(&self) -> Result<Self> {
        if self.model == Model::Sextic {
            return Ok(self.clone());
        }
        // Pick t away from every root.
        let mut t = cr(0.0);
        let mut best = -1.0;
        for k in 0..12 {
            let cand = Complex64::from_polar(1.0 + 0.37 * k as f64, 0.9 * k as f64);
            let d = self.roots.iter().map(|r| (r - cand).norm()).fold(f64::INFINITY, f64::min);
            if d > best {
                best = d;
                t = cand;
            }
        }
        let lead = self.leading() * self.roots.iter().fold(ONE, |acc, e| acc * (t - e));
        let mut roots: Vec<Complex64> = self.roots.iter().map(|e| ONE / (e - t)).collect();
        roots.push(ZERO);
        Self::sextic_from_roots(lead, &roots)
    }

    /// Warns (returns true) when the discriminant is tiny relative to the root spread.
    pub fn ill_conditioned(&self) -> bool {
        let n = self.roots.len();
        let mut spread: f64 = 0.0;
        let mut min: f64 = f64::INFINITY;
        for i in 0..n {
            for j in i + 1..n {
                let d = (self.roots[i] - self.roots[j]).norm();
                spread = spread.max(d);
                min = min.min(d);
            }
        }
        min < 1e-5 * spread
    }
}

/// Binary invariants `(A, B, C, D)` of a sextic: `A` from the coefficient
/// formula, `B, C, D` as root symmetrizations of weights 4, 6, 10.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BinaryInvariants {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

/// Igusa absolute invariants.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AbsoluteInvariants {
    pub j1: Complex64,
    pub j2: Complex64,
    pub j3: Complex64,
}

/// The 15 perfect matchings of `{0..5}`.
pub fn pairings6() -> Vec<[(usize, usize); 3]> {
    let mut out = Vec::new();
    for j in 1..6 {
        let rest: Vec<usize> = (1..6).filter(|&k| k != j).collect();
        let (a, b, c, d) = (rest[0], rest[1], rest[2], rest[3]);
        out.push([(0, j), (a, b), (c, d)]);
        out.push([(0, j), (a, c), (b, d)]);
        out.push([(0, j), (a, d), (b, c)]);
    }
    out
}

/// The 10 splittings of `{0..5}` into two triples (the first contains 0).
pub fn triple_splits6() -> Vec<([usize; 3], [usize; 3])> {
    let mut out = Vec::new();
    for i in 1..6 {
        for j in i + 1..6 {
            let other: Vec<usize> = (1..6).filter(|&k| k != i && k != j).collect();
            out.push(([0, i, j], [other[0], other[1], other[2]]));
        }
    }
    out
}

impl BinaryInvariants {
    /// Invariants of a sextic model.
    pub fn of(curve: &HyperellipticCurve) -> Result<Self> {
        if curve.model() != Model::Sextic {
            return Err(Error::ModelMismatch("binary invariants need a sextic; use sextic_closure".into()));
        }
        let a = curve.coeffs();
        let r = curve.roots();
        let a0 = a[0];
        let d2 = |i: usize, j: usize| (r[i] - r[j]) * (r[i] - r[j]);
        let ia = a[3] * a[3] * 6.0 - a[2] * a[4] * 16.0 + a[1] * a[5] * 40.0 - a[0] * a[6] * 240.0;
        let mut i4 = ZERO;
        let mut i6 = ZERO;
        for (t, u) in triple_splits6() {
            let p = d2(t[0], t[1]) * d2(t[1], t[2]) * d2(t[2], t[0]) * d2(u[0], u[1]) * d2(u[1], u[2]) * d2(u[2], u[0]);
            i4 += p;
            for perm in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
                i6 += p * d2(t[0], u[perm[0]]) * d2(t[1], u[perm[1]]) * d2(t[2], u[perm[2]]);
            }
        }
        let mut i10 = ONE;
        for i in 0..6 {
            for j in i + 1..6 {
                i10 *= d2(i, j);
            }
        }
        Ok(Self { a: ia, b: a0.powu(4) * i4, c: a0.powu(6) * i6, d: a0.powu(10) * i10 })
    }

    /// `A` re-evaluated as the root symmetrization over the 15 pairings
    /// (weight 2); used to cross-check the coefficient formula.
    pub fn a_from_roots(curve: &HyperellipticCurve) -> Complex64 {
        let r = curve.roots();
        let a0 = curve.leading();
        let d2 = |i: usize, j: usize| (r[i] - r[j]) * (r[i] - r[j]);
        let mut s = ZERO;
        for p in pairings6() {
            s += d2(p[0].0, p[0].1) * d2(p[1].0, p[1].1) * d2(p[2].0, p[2].1);
        }
        a0 * a0 * s
    }

    pub fn absolute(&self) -> Result<AbsoluteInvariants> {
        if self.a.norm() == 0.0 {
            return Err(Error::AZero);
        }
        let a = self.a;
        Ok(AbsoluteInvariants {
            j1: self.b * 144.0 / (a * a),
            j2: (self.c * 3.0 - a * self.b) * 1728.0 / a.powu(3),
            j3: self.d * 486.0 / a.powu(5),
        })
    }
}

/// Absolute invariants of any model (via its sextic closure).
pub fn absolute_invariants(curve: &HyperellipticCurve) -> Result<AbsoluteInvariants> {
    BinaryInvariants::of(&curve.sextic_closure()?)?.absolute()
}

/// The change of variables `X = r0 (x + c1)/(x + c2)`,
/// `Y = sqrt(k / b0) y / (x + c2)^3` taking a quintic to a sextic.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoordinateMap {
    pub c1: Complex64,
    pub c2: Complex64,
    pub r0: Complex64,
    /// `sqrt(k / b0)` with `k = a0 r0 (c1 - c2) prod_{k>=1} (r0 - r_k)`.
    pub y_scale: Complex64,
}

impl CoordinateMap {
    /// Quintic point to sextic point.
    pub fn forward(&self, x: Complex64, y: Complex64) -> (Complex64, Complex64) {
        let den = x + self.c2;
        (self.r0 * (x + self.c1) / den, self.y_scale * y / (den * den * den))
    }

    /// Sextic point to quintic point.
    pub fn inverse(&self, xx: Complex64, yy: Complex64) -> (Complex64, Complex64) {
        let x = (self.r0 * self.c1 - self.c2 * xx) / (xx - self.r0);
        let den = x + self.c2;
        (x, yy * den * den * den / self.y_scale)
    }

    /// `dX/dx`.
    pub fn dxx_dx(&self, x: Complex64) -> Complex64 {
        let den = x + self.c2;
        self.r0 * (self.c2 - self.c1) / (den * den)
    }
}

/// Sends `r0` (the first listed root) to infinity. The quintic has leading
/// coefficient `b0` and roots `e_k = -(c1 r0 - c2 r_k)/(r0 - r_k)`.
pub fn sextic_to_quintic(
    curve: &HyperellipticCurve,
    c1: Complex64,
    c2: Complex64,
    b0: Complex64,
) -> Result<(HyperellipticCurve, CoordinateMap)> {
    if curve.model() != Model::Sextic {
        return Err(Error::ModelMismatch("sextic_to_quintic needs a sextic".into()));
    }
    let r = curve.roots();
    let r0 = r[0];
    if r0.norm() == 0.0 {
        return Err(Error::RootAtZero);
    }
    if (c1 - c2).norm() == 0.0 {
        return Err(Error::CoincidentShifts);
    }
    let e: Vec<Complex64> = r[1..].iter().map(|rk| -(c1 * r0 - c2 * rk) / (r0 - rk)).collect();
    let mut k = curve.leading() * r0 * (c1 - c2);
    for rk in &r[1..] {
        k *= r0 - rk;
    }
    let q = HyperellipticCurve::quintic_from_roots(b0, &e)?;
    Ok((q, CoordinateMap { c1, c2, r0, y_scale: (k / b0).sqrt() }))
}

/// The shifts `(c1, c2)` sending `(r0, r2, r4)` to `(infinity, 0, 1)`.
pub fn rosenhain_shifts(r0: Complex64, r2: Complex64, r4: Complex64) -> (Complex64, Complex64) {
    let c2 = -(r4 - r0) / (r4 - r2);
    let c1 = -(r2 / r0) * (r4 - r0) / (r4 - r2);
    (c1, c2)
}

/// `x -> s^2 x + r`, `y -> s^5 y`: roots become `(e - r)/s^2`.
pub fn quintic_normalize(curve: &HyperellipticCurve, s: Complex64, r: Complex64) -> Result<HyperellipticCurve> {
    if curve.model() == Model::Sextic {
        return Err(Error::ModelMismatch("quintic_normalize needs a degree-5 model".into()));
    }
    if s.norm() == 0.0 {
        return Err(Error::ZeroScale);
    }
    let s2 = s * s;
    let roots: Vec<Complex64> = curve.roots().iter().map(|e| (e - r) / s2).collect();
    HyperellipticCurve::quintic_from_roots(curve.leading(), &roots)
}

/// Rosenhain parameters under an ordering of the sextic roots: entries 0, 2, 4
/// of `ordering` go to infinity, 0 and 1; entries 1, 3, 5 give `l1, l2, l3`.
pub fn to_rosenhain(curve: &HyperellipticCurve, ordering: &[usize]) -> Result<HyperellipticCurve> {
    if curve.model() != Model::Sextic {
        return Err(Error::ModelMismatch("to_rosenhain needs a sextic".into()));
    }
    let c = curve.reordered(ordering)?;
    let r = c.roots();
    let m = (r[4] - r[0]) / (r[4] - r[2]);
    let l: Vec<Complex64> = [1, 3, 5].iter().map(|&i| m * (r[i] - r[2]) / (r[i] - r[0])).collect();
    HyperellipticCurve::rosenhain(&l)
}

/// Resultant of two polynomials via the Sylvester determinant.
pub fn resultant(p: &Poly, q: &Poly) -> Complex64 {
    let m = p.degree();
    let n = q.degree();
    let size = m + n;
    let mut s = nalgebra::DMatrix::<Complex64>::zeros(size, size);
    let pd = p.descending(m);
    let qd = q.descending(n);
    for i in 0..n {
        for (k, v) in pd.iter().enumerate() {
            s[(i, i + k)] = *v;
        }
    }
    for i in 0..m {
        for (k, v) in qd.iter().enumerate() {
            s[(n + i, i + k)] = *v;
        }
    }
    s.determinant()
}
