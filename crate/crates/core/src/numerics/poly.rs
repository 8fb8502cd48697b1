//! Dense complex polynomials (ascending coefficients) and a simultaneous root finder.

use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// `p(x) = sum c[k] x^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    pub c: Vec<Complex64>,
}

impl Poly {
    pub fn new(c: Vec<Complex64>) -> Self {
        Self { c }
    }

    /// Builds from coefficients listed leading-first (`a_0 x^n + ... + a_n`).
    pub fn from_descending(a: &[Complex64]) -> Self {
        Self { c: a.iter().rev().copied().collect() }
    }

    /// Leading-first coefficient list of length `degree + 1` (padded to `n + 1`).
    pub fn descending(&self, n: usize) -> Vec<Complex64> {
        (0..=n).map(|k| self.c.get(n - k).copied().unwrap_or(ZERO)).collect()
    }

    /// `lead * prod (x - r)`.
    pub fn from_roots(lead: Complex64, roots: &[Complex64]) -> Self {
        let mut c = vec![lead];
        for r in roots {
            let mut next = vec![ZERO; c.len() + 1];
            for (k, ck) in c.iter().enumerate() {
                next[k + 1] += ck;
                next[k] -= ck * r;
            }
            c = next;
        }
        Self { c }
    }

    /// Degree ignoring exactly-zero top coefficients.
    pub fn degree(&self) -> usize {
        self.c.iter().rposition(|v| v.norm() != 0.0).unwrap_or(0)
    }

    pub fn eval(&self, x: Complex64) -> Complex64 {
        self.c.iter().rev().fold(ZERO, |acc, ck| acc * x + ck)
    }

    pub fn derivative(&self) -> Self {
        if self.c.len() <= 1 {
            return Self { c: vec![ZERO] };
        }
        Self { c: self.c.iter().enumerate().skip(1).map(|(k, v)| v * k as f64).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut c = vec![ZERO; self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self { c }
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|k| self.c.get(k).copied().unwrap_or(ZERO) + o.c.get(k).copied().unwrap_or(ZERO))
            .collect();
        Self { c }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self { c: self.c.iter().map(|v| v * s).collect() }
    }

    /// Taylor coefficients at `x0`: `p(x0 + t) = sum d[k] t^k`.
    pub fn taylor_at(&self, x0: Complex64) -> Vec<Complex64> {
        let mut work = self.c.clone();
        let n = work.len();
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            // Synthetic division by (x - x0): remainder is the next Taylor coefficient.
            let mut rem = ZERO;
            let mut q = vec![ZERO; work.len().saturating_sub(1)];
            for k in (0..work.len()).rev() {
                let v = work[k] + rem * x0;
                if k == 0 {
                    rem = v;
                } else {
                    q[k - 1] = v;
                    rem = v;
                }
            }
            // The loop above leaves `rem` = p(x0); q holds the quotient.
            out.push(rem);
            work = q;
            if work.is_empty() {
                break;
            }
        }
        out.resize(n, ZERO);
        out
    }

    /// All roots, polished by Newton steps, in lexicographic (re, im) order.
    pub fn roots(&self) -> Result<Vec<Complex64>> {
        let n = self.degree();
        if n == 0 {
            return Ok(Vec::new());
        }
        let lead = self.c[n];
        let monic: Vec<Complex64> = self.c[..=n].iter().map(|v| v / lead).collect();
        let p = Poly::new(monic);
        let dp = p.derivative();
        // Cauchy bound for the initial circle.
        let radius = 1.0 + p.c[..n].iter().map(|v| v.norm()).fold(0.0, f64::max);
        let mut z: Vec<Complex64> = (0..n)
            .map(|k| Complex64::from_polar(0.5 * radius, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64))
            .collect();
        for _ in 0..500 {
            let mut moved: f64 = 0.0;
            for i in 0..n {
                let pv = p.eval(z[i]);
                let dv = dp.eval(z[i]);
                if pv.norm() == 0.0 {
                    continue;
                }
                let ratio = pv / dv;
                let mut s = ZERO;
                for j in 0..n {
                    if j != i {
                        s += ONE / (z[i] - z[j]);
                    }
                }
                let w = ratio / (ONE - ratio * s);
                z[i] -= w;
                moved = moved.max(w.norm() / (1.0 + z[i].norm()));
            }
            if moved < 1e-15 {
                break;
            }
        }
        for zi in z.iter_mut() {
            for _ in 0..3 {
                let dv = dp.eval(*zi);
                if dv.norm() == 0.0 {
                    break;
                }
                let step = p.eval(*zi) / dv;
                if !step.re.is_finite() || !step.im.is_finite() {
                    break;
                }
                *zi -= step;
            }
        }
        if z.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::NonFiniteSample);
        }
        sort_lex(&mut z);
        // A double root splits into a pair about sqrt(eps) apart, so computed
        // roots use a looser threshold than user-supplied ones.
        check_distinct(&z, COMPUTED_ROOT_SEPARATION)?;
        Ok(z)
    }
}

/// Sorts complex numbers lexicographically by (re, im).
pub fn sort_lex(v: &mut [Complex64]) {
    v.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap().then(a.im.partial_cmp(&b.im).unwrap()));
}

/// Relative separation below which supplied roots count as coincident.
pub const ROOT_SEPARATION: f64 = 1e-10;
/// Relative separation below which computed roots count as coincident.
pub const COMPUTED_ROOT_SEPARATION: f64 = 1e-7;

/// Fails with `DegenerateDiscriminant` when two points are closer than
/// `tol` times the spread of the set.
pub fn check_distinct(z: &[Complex64], tol: f64) -> Result<()> {
    let mut spread: f64 = 0.0;
    for a in z {
        for b in z {
            spread = spread.max((a - b).norm());
        }
    }
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            if (z[i] - z[j]).norm() <= tol * spread {
                return Err(Error::DegenerateDiscriminant);
            }
        }
    }
    Ok(())
}
