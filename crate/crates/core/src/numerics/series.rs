//! Truncated Laurent series in one local uniformizer.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A Laurent series `sum_{k >= lead} c_k z^k` whose coefficients are known
/// only for exponents strictly below `trunc_order`.
#[derive(Clone, PartialEq)]
pub struct LaurentSeries {
    lead_order: i32,
    coeffs: Vec<Complex64>,
}

impl LaurentSeries {
    /// Series with coefficients `coeffs[i]` of `z^(lead_order + i)`; the
    /// truncation order is `lead_order + coeffs.len()`.
    pub fn new(lead_order: i32, coeffs: Vec<Complex64>) -> Self {
        Self { lead_order, coeffs }
    }

    /// The zero series, known up to (not including) `z^trunc_order`.
    pub fn zero(trunc_order: i32) -> Self {
        Self { lead_order: trunc_order, coeffs: Vec::new() }
    }

    /// `c z^k`, known up to `z^trunc_order`.
    pub fn monomial(k: i32, c: Complex64, trunc_order: i32) -> Self {
        if trunc_order <= k {
            return Self::zero(trunc_order);
        }
        let mut coeffs = vec![Complex64::new(0.0, 0.0); (trunc_order - k) as usize];
        coeffs[0] = c;
        Self { lead_order: k, coeffs }
    }

    /// Power series from its Taylor coefficients `c_0, c_1, ...`.
    pub fn from_taylor(coeffs: Vec<Complex64>) -> Self {
        Self { lead_order: 0, coeffs }
    }

    pub fn lead_order(&self) -> i32 {
        self.lead_order
    }

    pub fn trunc_order(&self) -> i32 {
        self.lead_order + self.coeffs.len() as i32
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `z^k`, or `None` when `k` is beyond the truncation.
    pub fn coeff(&self, k: i32) -> Option<Complex64> {
        if k >= self.trunc_order() {
            None
        } else if k < self.lead_order {
            Some(Complex64::new(0.0, 0.0))
        } else {
            Some(self.coeffs[(k - self.lead_order) as usize])
        }
    }

    /// Coefficient of `z^k`, panicking when it is unknown.
    pub fn at(&self, k: i32) -> Complex64 {
        self.coeff(k).unwrap_or_else(|| {
            panic!("coefficient z^{k} beyond truncation order {}", self.trunc_order())
        })
    }

    /// Drops knowledge of coefficients at and beyond `trunc_order`.
    pub fn truncate(&self, trunc_order: i32) -> Self {
        let t = trunc_order.min(self.trunc_order());
        if t <= self.lead_order {
            return Self::zero(t);
        }
        Self { lead_order: self.lead_order, coeffs: self.coeffs[..(t - self.lead_order) as usize].to_vec() }
    }

    /// Re-expresses the series starting from exponent `lead`, padding with zeros.
    fn with_lead(&self, lead: i32) -> Vec<Complex64> {
        assert!(lead <= self.lead_order);
        let mut v = vec![Complex64::new(0.0, 0.0); (self.trunc_order() - lead).max(0) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[(self.lead_order - lead) as usize + i] = *c;
        }
        v
    }

    /// Strips exactly-zero leading coefficients.
    pub fn normalized(&self) -> Self {
        let skip = self.coeffs.iter().take_while(|c| c.re == 0.0 && c.im == 0.0).count();
        Self { lead_order: self.lead_order + skip as i32, coeffs: self.coeffs[skip..].to_vec() }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self { lead_order: self.lead_order, coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    /// Multiplies by `z^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self { lead_order: self.lead_order + k, coeffs: self.coeffs.clone() }
    }

    /// Multiplicative inverse. The leading stored coefficient must be nonzero.
    pub fn invert(&self) -> Result<Self> {
        let a = self.normalized();
        if a.coeffs.is_empty() {
            return Err(Error::ZeroLeadingCoefficient);
        }
        let n = a.coeffs.len();
        let inv0 = Complex64::new(1.0, 0.0) / a.coeffs[0];
        let mut b = vec![Complex64::new(0.0, 0.0); n];
        b[0] = inv0;
        for k in 1..n {
            let mut s = Complex64::new(0.0, 0.0);
            for j in 1..=k {
                s += a.coeffs[j] * b[k - j];
            }
            b[k] = -s * inv0;
        }
        Ok(Self { lead_order: -a.lead_order, coeffs: b })
    }

    /// Coefficient of `z^-1`.
    pub fn residue(&self) -> Result<Complex64> {
        self.coeff(-1).ok_or(Error::TruncationTooShallow {
            needed: 0,
            available: self.trunc_order(),
        })
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * (self.lead_order + i as i32) as f64)
            .collect();
        Self { lead_order: self.lead_order - 1, coeffs }.normalized_to(self.trunc_order() - 1)
    }

    /// Keeps the stated truncation order even when the coefficient vector is
    /// shorter (used after operations that can produce an empty vector).
    fn normalized_to(self, trunc: i32) -> Self {
        if self.trunc_order() == trunc {
            self
        } else {
            self.truncate(trunc)
        }
    }

    /// Termwise primitive vanishing at `z = 0` (for power series) or with zero
    /// constant term. Fails if the `z^-1` coefficient is nonzero.
    pub fn primitive(&self) -> Result<Self> {
        if let Some(r) = self.coeff(-1) {
            if r.norm() > 0.0 {
                return Err(Error::InvalidInput("primitive of a series with nonzero residue".into()));
            }
        }
        let lead = self.lead_order + 1;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let k = self.lead_order + i as i32;
                if k == -1 {
                    Complex64::new(0.0, 0.0)
                } else {
                    c / (k + 1) as f64
                }
            })
            .collect();
        Ok(Self { lead_order: lead, coeffs })
    }

    /// Evaluates the known part of the series at `z`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc * z.powi(self.lead_order)
    }

    /// `f(z)` to `f(z^2)`.
    pub fn substitute_square(&self) -> Self {
        let n = self.coeffs.len();
        if n == 0 {
            return Self::zero(2 * self.trunc_order());
        }
        let mut coeffs = vec![Complex64::new(0.0, 0.0); 2 * n];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[2 * i] = *c;
        }
        Self { lead_order: 2 * self.lead_order, coeffs }
    }

    /// `f(z)` to `f(-z)`.
    pub fn reflect(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if (self.lead_order + i as i32).rem_euclid(2) == 1 { -c } else { *c })
            .collect();
        Self { lead_order: self.lead_order, coeffs }
    }

    /// Odd part `(f(z) - f(-z))/2`.
    pub fn odd_part(&self) -> Self {
        (self - &self.reflect()).scale(Complex64::new(0.5, 0.0))
    }

    /// Even part `(f(z) + f(-z))/2`.
    pub fn even_part(&self) -> Self {
        (self + &self.reflect()).scale(Complex64::new(0.5, 0.0))
    }

    /// Square root of a power series with `lead_order` even, with the leading
    /// coefficient's root given by `root0` (must square to the leading coefficient).
    pub fn sqrt_with(&self, root0: Complex64) -> Result<Self> {
        let a = self.normalized();
        if a.coeffs.is_empty() {
            return Err(Error::ZeroLeadingCoefficient);
        }
        if a.lead_order % 2 != 0 {
            return Err(Error::InvalidInput("square root of a series with odd leading order".into()));
        }
        let n = a.coeffs.len();
        let mut b = vec![Complex64::new(0.0, 0.0); n];
        b[0] = root0;
        let two_b0 = root0 * 2.0;
        for k in 1..n {
            let mut s = a.coeffs[k];
            for j in 1..k {
                s -= b[j] * b[k - j];
            }
            b[k] = s / two_b0;
        }
        Ok(Self { lead_order: a.lead_order / 2, coeffs: b })
    }

    /// Principal-branch square root of a power series.
    pub fn sqrt(&self) -> Result<Self> {
        let a = self.normalized();
        let c0 = *a.coeffs.first().ok_or(Error::ZeroLeadingCoefficient)?;
        a.sqrt_with(c0.sqrt())
    }

    /// `atanh(f)` for a power series with `f(0) = 0`.
    pub fn atanh(&self) -> Result<Self> {
        let f = self.normalized();
        if f.coeffs.is_empty() {
            return Ok(Self::zero(self.trunc_order()));
        }
        if f.lead_order < 1 {
            return Err(Error::InvalidInput("atanh needs a series vanishing at the origin".into()));
        }
        let trunc = f.trunc_order();
        let f2 = &f * &f;
        let mut term = f.clone();
        let mut acc = f.clone();
        let mut k = 1;
        loop {
            term = (&term * &f2).truncate(trunc);
            if term.lead_order >= trunc || term.coeffs.is_empty() {
                break;
            }
            acc = &acc + &term.scale(Complex64::new(1.0 / (2 * k + 1) as f64, 0.0));
            k += 1;
        }
        Ok(acc.truncate(trunc))
    }

    /// `exp(f)` for a power series with `f(0) = 0`.
    pub fn exp(&self) -> Result<Self> {
        let f = self.normalized();
        let trunc = self.trunc_order();
        if trunc <= 0 {
            return Err(Error::InvalidInput("exp of a series without constant term data".into()));
        }
        if f.lead_order < 1 && !f.coeffs.is_empty() {
            return Err(Error::InvalidInput("exp needs a series vanishing at the origin".into()));
        }
        let mut acc = Self::monomial(0, Complex64::new(1.0, 0.0), trunc);
        let mut term = acc.clone();
        for k in 1..=trunc {
            term = (&term * &f).truncate(trunc).scale(Complex64::new(1.0 / k as f64, 0.0));
            if term.coeffs.is_empty() {
                break;
            }
            acc = &acc + &term;
        }
        Ok(acc.truncate(trunc))
    }

    /// `log(f)` for a power series with nonzero constant term, on the
    /// principal branch at the origin.
    pub fn log(&self) -> Result<Self> {
        let c0 = self.coeff(0).ok_or(Error::TruncationTooShallow { needed: 1, available: self.trunc_order() })?;
        if self.lead_order < 0 || c0.norm() == 0.0 {
            return Err(Error::ZeroLeadingCoefficient);
        }
        let u = self.scale(Complex64::new(1.0, 0.0) / c0);
        let du = u.derivative();
        let q = (&du * &u.invert()?).truncate(self.trunc_order() - 1);
        let mut coeffs = q.primitive()?.with_lead(0);
        coeffs.resize(self.trunc_order() as usize, Complex64::new(0.0, 0.0));
        coeffs[0] += c0.ln();
        Ok(Self { lead_order: 0, coeffs })
    }

    /// Largest coefficient modulus (0 for an empty series).
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentSeries[lead {}, trunc {}](", self.lead_order, self.trunc_order())?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}{:+}i", c.re, c.im)?;
        }
        write!(f, ")")
    }
}

impl Add for &LaurentSeries {
    type Output = LaurentSeries;
    fn add(self, rhs: &LaurentSeries) -> LaurentSeries {
        let lead = self.lead_order.min(rhs.lead_order);
        let trunc = self.trunc_order().min(rhs.trunc_order());
        if trunc <= lead {
            return LaurentSeries::zero(trunc);
        }
        let mut a = self.with_lead(lead);
        let b = rhs.with_lead(lead);
        a.truncate((trunc - lead) as usize);
        for (x, y) in a.iter_mut().zip(b.iter()) {
            *x += y;
        }
        LaurentSeries { lead_order: lead, coeffs: a }
    }
}

impl Sub for &LaurentSeries {
    type Output = LaurentSeries;
    fn sub(self, rhs: &LaurentSeries) -> LaurentSeries {
        self + &(-rhs)
    }
}

impl Neg for &LaurentSeries {
    type Output = LaurentSeries;
    fn neg(self) -> LaurentSeries {
        LaurentSeries { lead_order: self.lead_order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &LaurentSeries {
    type Output = LaurentSeries;
    fn mul(self, rhs: &LaurentSeries) -> LaurentSeries {
        let lead = self.lead_order + rhs.lead_order;
        let trunc = (self.trunc_order() + rhs.lead_order).min(rhs.trunc_order() + self.lead_order);
        if trunc <= lead {
            return LaurentSeries::zero(trunc);
        }
        let n = (trunc - lead) as usize;
        let mut c = vec![Complex64::new(0.0, 0.0); n];
        for (i, x) in self.coeffs.iter().enumerate().take(n) {
            if x.re == 0.0 && x.im == 0.0 {
                continue;
            }
            for (j, y) in rhs.coeffs.iter().enumerate().take(n - i) {
                c[i + j] += x * y;
            }
        }
        LaurentSeries { lead_order: lead, coeffs: c }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentSeries {
            type Output = LaurentSeries;
            fn $m(self, rhs: LaurentSeries) -> LaurentSeries {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
