//! Gauss quadrature rules and straight-segment contour integration.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RuleKind {
    GaussLegendre,
    GaussChebyshev,
}

/// Nodes and weights on `(-1, 1)`. For the Chebyshev kind the weight
/// function `1/sqrt(1 - t^2)` is built in.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub kind: RuleKind,
}

impl QuadratureRule {
    pub fn gauss_legendre(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            // Tricomi initial guess, then Newton on P_n.
            let mut x = ((4 * i + 3) as f64 * PI / (4 * n + 2) as f64).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights, kind: RuleKind::GaussLegendre }
    }

    pub fn gauss_chebyshev(n: usize) -> Self {
        assert!(n >= 1);
        let nodes = (1..=n).rev().map(|i| ((2 * i - 1) as f64 * PI / (2 * n) as f64).cos()).collect();
        Self { nodes, weights: vec![PI / n as f64; n], kind: RuleKind::GaussChebyshev }
    }

    pub fn of_kind(kind: RuleKind, n: usize) -> Self {
        match kind {
            RuleKind::GaussLegendre => Self::gauss_legendre(n),
            RuleKind::GaussChebyshev => Self::gauss_chebyshev(n),
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `sum w_i g(t_i)`.
    pub fn apply<F: Fn(f64) -> Complex64>(&self, g: F) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (t, w) in self.nodes.iter().zip(self.weights.iter()) {
            let v = g(*t);
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::NonFiniteSample);
            }
            acc += v * *w;
        }
        Ok(acc)
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Which endpoints of a segment carry an inverse square-root singularity.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SingularEnds {
    pub start: bool,
    pub end: bool,
}

impl SingularEnds {
    pub const NONE: Self = Self { start: false, end: false };
    pub const BOTH: Self = Self { start: true, end: true };
    pub const START: Self = Self { start: true, end: false };
    pub const END: Self = Self { start: false, end: true };
}

/// Adaptive doubling settings.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureOptions {
    pub initial_nodes: usize,
    pub max_nodes: usize,
    pub tolerance: f64,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        Self { initial_nodes: 64, max_nodes: 1024, tolerance: 1e-11 }
    }
}

/// Integral of `f(x) dx` along the straight segment from `a` to `b`, using a
/// fixed rule. With singular endpoints the `(x - e)^(-1/2)` behaviour is
/// removed first: both ends use the Chebyshev weight, a single end uses the
/// substitution `x = e + (other - e) w^2`.
pub fn integrate_segment<F: Fn(Complex64) -> Complex64>(
    f: &F,
    a: Complex64,
    b: Complex64,
    rule_nodes: usize,
    singular: SingularEnds,
) -> Result<Complex64> {
    let m = (a + b) * 0.5;
    let h = (b - a) * 0.5;
    match (singular.start, singular.end) {
        (true, true) => {
            let rule = QuadratureRule::gauss_chebyshev(rule_nodes);
            let v = rule.apply(|t| f(m + h * t) * (1.0 - t * t).sqrt())?;
            Ok(v * h)
        }
        (false, false) => {
            let rule = QuadratureRule::gauss_legendre(rule_nodes);
            Ok(rule.apply(|t| f(m + h * t))? * h)
        }
        (true, false) | (false, true) => {
            let (e, other, sign) = if singular.start { (a, b, 1.0) } else { (b, a, -1.0) };
            let d = other - e;
            let rule = QuadratureRule::gauss_legendre(rule_nodes);
            // w in (0,1) mapped from t in (-1,1).
            let v = rule.apply(|t| {
                let w = 0.5 * (t + 1.0);
                f(e + d * (w * w)) * d * (2.0 * w) * 0.5
            })?;
            Ok(v * sign)
        }
    }
}

/// `integrate_segment` with node doubling until two successive estimates
/// agree to the tolerance (relative to the larger modulus, or absolute below 1).
pub fn integrate_segment_adaptive<F: Fn(Complex64) -> Complex64>(
    f: &F,
    a: Complex64,
    b: Complex64,
    singular: SingularEnds,
    opts: &QuadratureOptions,
) -> Result<Complex64> {
    let mut n = opts.initial_nodes.max(2);
    let mut prev = integrate_segment(f, a, b, n, singular)?;
    while n * 2 <= opts.max_nodes {
        n *= 2;
        let cur = integrate_segment(f, a, b, n, singular)?;
        let scale = cur.norm().max(1.0);
        if (cur - prev).norm() <= opts.tolerance * scale {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::QuadratureFailure { nodes: n })
}

/// Applies the adaptive scheme to a vector-valued integrand evaluated on the
/// rule nodes in `t in (-1, 1)`; `g(rule)` must return the rule applied to
/// every component. Convergence is judged on the largest component change.
pub fn adaptive_vector<G: Fn(usize) -> Result<Vec<Complex64>>>(g: G, opts: &QuadratureOptions) -> Result<Vec<Complex64>> {
    let mut n = opts.initial_nodes.max(2);
    let mut prev = g(n)?;
    while n * 2 <= opts.max_nodes {
        n *= 2;
        let cur = g(n)?;
        let scale = cur.iter().map(|v| v.norm()).fold(1.0, f64::max);
        let diff = cur.iter().zip(prev.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
        if diff <= opts.tolerance * scale {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::QuadratureFailure { nodes: n })
}
