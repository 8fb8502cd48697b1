//! Seeded random curves, points and mirror moduli for tests and verification suites.

use num_complex::Complex64;
use rand::Rng;

use crate::curve::HyperellipticCurve;
use crate::jacobian::{well_conditioned, CurvePoint};
use crate::mirror::{mirror_sextic, MirrorModuli};
use crate::periods::{compute, PeriodData};

fn unit_box<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

fn min_gap(z: &[Complex64]) -> f64 {
    let mut g = f64::INFINITY;
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            g = g.min((z[i] - z[j]).norm());
        }
    }
    g
}

fn accept_sextic(a: &[Complex64]) -> Option<(HyperellipticCurve, PeriodData)> {
    let c = HyperellipticCurve::sextic(a).ok()?;
    if c.ill_conditioned() || min_gap(c.roots()) < 0.15 || c.roots().iter().any(|r| r.norm() > 6.0) {
        return None;
    }
    let pd = compute(&c).ok()?;
    well_conditioned(&pd.tau).then_some((c, pd))
}

/// Sextic with coefficients in the unit box, roots at least `0.15` apart and
/// a well-conditioned period matrix.
pub fn random_sextic<R: Rng>(rng: &mut R) -> (HyperellipticCurve, PeriodData) {
    loop {
        let a: Vec<Complex64> = (0..7).map(|_| unit_box(rng)).collect();
        if a[0].norm() < 0.3 {
            continue;
        }
        if let Some(out) = accept_sextic(&a) {
            return out;
        }
    }
}

/// As [`random_sextic`] with leading coefficient `1`.
pub fn random_unit_sextic<R: Rng>(rng: &mut R) -> (HyperellipticCurve, PeriodData) {
    loop {
        let mut a: Vec<Complex64> = (0..7).map(|_| unit_box(rng)).collect();
        a[0] = Complex64::new(1.0, 0.0);
        if let Some(out) = accept_sextic(&a) {
            return out;
        }
    }
}

/// Monic quintic with coefficients in the unit box, under the same conditions.
pub fn random_monic_quintic<R: Rng>(rng: &mut R) -> (HyperellipticCurve, PeriodData) {
    loop {
        let mut b: Vec<Complex64> = (0..6).map(|_| unit_box(rng)).collect();
        b[0] = Complex64::new(1.0, 0.0);
        let Ok(c) = HyperellipticCurve::quintic(&b) else { continue };
        if c.ill_conditioned() || min_gap(c.roots()) < 0.15 {
            continue;
        }
        if let Ok(pd) = compute(&c) {
            if well_conditioned(&pd.tau) {
                return (c, pd);
            }
        }
    }
}

/// A finite point on a random sheet with `x` in `[-1.5, 1.5]^2`, away from the branch points.
pub fn random_point<R: Rng>(rng: &mut R, curve: &HyperellipticCurve) -> CurvePoint {
    loop {
        let x = unit_box(rng) * 1.5;
        if curve.roots().iter().all(|r| (x - r).norm() > 0.1) {
            let sheet = if rng.gen_bool(0.5) { 1 } else { -1 };
            return CurvePoint::on_curve(curve, x, sheet);
        }
    }
}

/// Mirror moduli with `|q1|, |q2| <= 0.5`, `|q3| <= 0.04` giving a smooth curve
/// with well-separated branch points away from `x = 0`.
pub fn random_mirror_moduli<R: Rng>(rng: &mut R) -> MirrorModuli {
    loop {
        let m = MirrorModuli::new(unit_box(rng) * 0.5, unit_box(rng) * 0.5, unit_box(rng) * 0.04);
        let Ok(c) = mirror_sextic(&m) else { continue };
        let r = c.roots();
        if min_gap(r) > 0.2 && r.iter().all(|z| z.norm() > 0.2) {
            return m;
        }
    }
}
