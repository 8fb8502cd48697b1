//! Truncated bivariate power series `sum c_ij s^i t^j`, known for `i + j < deg`.

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct BiSeries {
    deg: usize,
    // Row-major over (i, j) with i + j < deg; unused slots stay zero.
    c: Vec<Complex64>,
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

impl BiSeries {
    pub fn zero(deg: usize) -> Self {
        Self { deg, c: vec![ZERO; deg * deg] }
    }

    pub fn constant(v: Complex64, deg: usize) -> Self {
        let mut s = Self::zero(deg);
        if deg > 0 {
            s.c[0] = v;
        }
        s
    }

    /// Total-degree truncation: coefficients with `i + j >= deg` are unknown.
    pub fn deg(&self) -> usize {
        self.deg
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        assert!(i + j < self.deg, "coefficient ({i},{j}) beyond truncation {}", self.deg);
        self.c[i * self.deg + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        assert!(i + j < self.deg);
        self.c[i * self.deg + j] = v;
    }

    /// Series depending on the first variable only.
    pub fn from_first(coeffs: &[Complex64], deg: usize) -> Self {
        let mut s = Self::zero(deg);
        for (i, v) in coeffs.iter().enumerate().take(deg) {
            s.set(i, 0, *v);
        }
        s
    }

    /// Series depending on the second variable only.
    pub fn from_second(coeffs: &[Complex64], deg: usize) -> Self {
        let mut s = Self::zero(deg);
        for (j, v) in coeffs.iter().enumerate().take(deg) {
            s.set(0, j, *v);
        }
        s
    }

    /// Expands the polynomial `sum g[i][j] X^i Y^j` around `(X, Y) = (x0, y0)`.
    pub fn from_bipoly(g: &[Vec<Complex64>], x0: Complex64, y0: Complex64, deg: usize) -> Self {
        let binom = |n: usize, k: usize| -> f64 {
            let mut r = 1.0;
            for m in 0..k {
                r = r * (n - m) as f64 / (m + 1) as f64;
            }
            r
        };
        let mut s = Self::zero(deg);
        for (i, row) in g.iter().enumerate() {
            for (j, gij) in row.iter().enumerate() {
                if gij.norm() == 0.0 {
                    continue;
                }
                for p in 0..=i {
                    for q in 0..=j {
                        if p + q >= deg {
                            continue;
                        }
                        let v = gij * binom(i, p) * binom(j, q) * x0.powu((i - p) as u32) * y0.powu((j - q) as u32);
                        let cur = s.get(p, q);
                        s.set(p, q, cur + v);
                    }
                }
            }
        }
        s
    }

    pub fn add(&self, o: &Self) -> Self {
        let deg = self.deg.min(o.deg);
        let mut r = Self::zero(deg);
        for i in 0..deg {
            for j in 0..deg - i {
                r.set(i, j, self.get(i, j) + o.get(i, j));
            }
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self { deg: self.deg, c: self.c.iter().map(|v| v * s).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let deg = self.deg.min(o.deg);
        let mut r = Self::zero(deg);
        for i in 0..deg {
            for j in 0..deg - i {
                let a = self.get(i, j);
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for k in 0..deg - i - j {
                    for l in 0..deg - i - j - k {
                        let idx = (i + k) * deg + (j + l);
                        r.c[idx] += a * o.get(k, l);
                    }
                }
            }
        }
        r
    }

    /// Inverse of a series with nonzero constant term.
    pub fn invert(&self) -> Result<Self> {
        let deg = self.deg;
        if deg == 0 {
            return Ok(self.clone());
        }
        let a0 = self.get(0, 0);
        if a0.norm() == 0.0 {
            return Err(Error::ZeroLeadingCoefficient);
        }
        let inv0 = Complex64::new(1.0, 0.0) / a0;
        let mut b = Self::zero(deg);
        b.set(0, 0, inv0);
        for s in 1..deg {
            for i in 0..=s {
                let j = s - i;
                let mut acc = ZERO;
                for k in 0..=i {
                    for l in 0..=j {
                        if k + l == 0 {
                            continue;
                        }
                        acc += self.get(k, l) * b.get(i - k, j - l);
                    }
                }
                b.set(i, j, -acc * inv0);
            }
        }
        Ok(b)
    }

    /// Exact quotient by `(s - t)`; the series must vanish on the diagonal.
    /// Returns the quotient (truncation drops by one) and the largest
    /// diagonal residue seen, which measures how far the division was from exact.
    pub fn div_by_difference(&self) -> (Self, f64) {
        let deg = self.deg;
        if deg == 0 {
            return (self.clone(), 0.0);
        }
        let mut q = Self::zero(deg - 1);
        let mut worst: f64 = 0.0;
        // M_{i,j} = Q_{i-1,j} - Q_{i,j-1}, solved along each antidiagonal.
        for s in 0..deg {
            if s == 0 {
                worst = worst.max(self.get(0, 0).norm());
                continue;
            }
            let mut prev = ZERO; // Q_{s-j, j-1}
            for j in 0..s {
                let qv = self.get(s - j, j) + prev;
                q.set(s - 1 - j, j, qv);
                prev = qv;
            }
            worst = worst.max((self.get(0, s) + prev).norm());
        }
        (q, worst)
    }

    /// Sum of the terms as a polynomial evaluated at `(s, t)`.
    pub fn eval(&self, s: Complex64, t: Complex64) -> Complex64 {
        let mut acc = ZERO;
        for i in 0..self.deg {
            for j in 0..self.deg - i {
                acc += self.get(i, j) * s.powu(i as u32) * t.powu(j as u32);
            }
        }
        acc
    }

    /// Swaps the two variables.
    pub fn transpose(&self) -> Self {
        let mut r = Self::zero(self.deg);
        for i in 0..self.deg {
            for j in 0..self.deg - i {
                r.set(j, i, self.get(i, j));
            }
        }
        r
    }
}
