//! Curve models, model changes and Igusa invariants.

use hyptr_core::curve::{
    absolute_invariants, quintic_normalize, resultant, sextic_to_quintic, to_rosenhain, AbsoluteInvariants, BinaryInvariants,
    HyperellipticCurve, Model,
};
use hyptr_core::numerics::{c, cr, Complex64, Poly};
use hyptr_core::sample::random_sextic;
use hyptr_core::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

fn j_close(a: &AbsoluteInvariants, b: &AbsoluteInvariants, tol: f64) -> bool {
    rel(a.j1, b.j1) < tol && rel(a.j2, b.j2) < tol && rel(a.j3, b.j3) < tol
}

fn random_roots(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    loop {
        let r: Vec<Complex64> = (0..n).map(|_| c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))).collect();
        let ok = (0..n).all(|i| (i + 1..n).all(|j| (r[i] - r[j]).norm() > 0.2));
        if ok {
            return r;
        }
    }
}

fn contains(set: &[Complex64], z: Complex64) -> bool {
    set.iter().any(|w| (w - z).norm() < 1e-12)
}

#[test]
fn roots_of_x5_minus_x() {
    let q = HyperellipticCurve::quintic(&[cr(1.0), cr(0.0), cr(0.0), cr(0.0), cr(-1.0), cr(0.0)]).unwrap();
    for z in [cr(0.0), cr(1.0), cr(-1.0), c(0.0, 1.0), c(0.0, -1.0)] {
        assert!(contains(q.roots(), z), "{z}");
    }
    assert_eq!(q.model(), Model::Quintic);
}

#[test]
fn roots_of_x6_plus_1_are_sixth_roots_of_minus_one() {
    let s = HyperellipticCurve::sextic(&[cr(1.0), cr(0.0), cr(0.0), cr(0.0), cr(0.0), cr(0.0), cr(1.0)]).unwrap();
    for k in 0..6 {
        let z = Complex64::from_polar(1.0, std::f64::consts::PI * (2 * k + 1) as f64 / 6.0);
        assert!(contains(s.roots(), z));
    }
}

#[test]
fn double_root_is_rejected() {
    let p = Poly::from_roots(cr(1.0), &[cr(0.5), cr(0.5), cr(-1.0), cr(2.0), c(0.0, 1.0), c(1.0, 1.0)]);
    let a = p.descending(6);
    assert_eq!(HyperellipticCurve::sextic(&a).unwrap_err(), Error::DegenerateDiscriminant);
    assert!(HyperellipticCurve::sextic_from_roots(cr(1.0), &[cr(0.5), cr(0.5), cr(1.0), cr(2.0), cr(3.0), cr(4.0)]).is_err());
}

#[test]
fn roots_reproduce_coefficients() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..20 {
        let (s, _) = random_sextic(&mut rng);
        let back = Poly::from_roots(s.leading(), s.roots()).descending(6);
        for (a, b) in back.iter().zip(s.coeffs()) {
            assert!((a - b).norm() < 1e-9 * s.coeffs().iter().map(|z| z.norm()).fold(1.0, f64::max));
        }
    }
}

#[test]
fn invariant_a_on_reference_sextics() {
    let a = |coeffs: [f64; 7]| {
        let s = HyperellipticCurve::sextic(&coeffs.map(cr)).unwrap();
        BinaryInvariants::of(&s).unwrap().a
    };
    assert_eq!(a([1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0]), cr(-240.0));
    // x^6 + x^3 has a triple root, so A = 6 is checked in exact integer arithmetic,
    // which then serves as the oracle on smooth integer sextics.
    let exact = |c: [i64; 7]| 6 * c[3] * c[3] - 16 * c[2] * c[4] + 40 * c[1] * c[5] - 240 * c[0] * c[6];
    assert_eq!(exact([1, 0, 0, 1, 0, 0, 0]), 6);
    for c in [[1, 2, -3, 1, 4, -2, 5], [2, 0, 1, 3, -1, 1, 1], [1, -1, 0, 2, 0, 3, -2]] {
        let v = a(c.map(|x| x as f64));
        assert_eq!(v, cr(exact(c) as f64), "{c:?}");
    }
}

#[test]
fn a_coefficient_formula_matches_root_symmetrization() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..20 {
        let (s, _) = random_sextic(&mut rng);
        let bi = BinaryInvariants::of(&s).unwrap();
        let ratio = BinaryInvariants::a_from_roots(&s) / bi.a;
        let r0 = {
            let t = HyperellipticCurve::sextic(&[cr(1.0), cr(0.0), cr(0.0), cr(0.0), cr(0.0), cr(0.0), cr(1.0)]).unwrap();
            BinaryInvariants::a_from_roots(&t) / BinaryInvariants::of(&t).unwrap().a
        };
        assert!(rel(ratio, r0) < 1e-9, "ratio {ratio} vs {r0}");
    }
}

#[test]
fn discriminant_matches_resultant() {
    let roots: Vec<Complex64> = (0..6).map(|k| cr(k as f64)).collect();
    let s = HyperellipticCurve::sextic_from_roots(cr(1.0), &roots).unwrap();
    let bi = BinaryInvariants::of(&s).unwrap();
    let p = s.poly();
    assert!(rel(resultant(&p, &p.derivative()), -bi.d * s.leading()) < 1e-8);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let (s, _) = random_sextic(&mut rng);
        let p = s.poly();
        let d = BinaryInvariants::of(&s).unwrap().d;
        assert!(rel(resultant(&p, &p.derivative()), -d * s.leading()) < 1e-8);
    }
}

#[test]
fn invariants_have_weights_2_4_6_10() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let roots = random_roots(&mut rng, 6);
    let a0 = c(0.7, -0.4);
    let s = c(1.3, 0.6);
    let base = BinaryInvariants::of(&HyperellipticCurve::sextic_from_roots(a0, &roots).unwrap()).unwrap();
    let scaled_roots: Vec<Complex64> = roots.iter().map(|r| r * s).collect();
    let scaled = BinaryInvariants::of(&HyperellipticCurve::sextic_from_roots(a0, &scaled_roots).unwrap()).unwrap();
    // Each invariant of weight w has degree 3w in the roots.
    assert!(rel(scaled.a, base.a * s.powu(6)) < 1e-9);
    assert!(rel(scaled.b, base.b * s.powu(12)) < 1e-9);
    assert!(rel(scaled.c, base.c * s.powu(18)) < 1e-9);
    assert!(rel(scaled.d, base.d * s.powu(30)) < 1e-9);
}

#[test]
fn absolute_invariants_are_mobius_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let roots = random_roots(&mut rng, 6);
        let j = absolute_invariants(&HyperellipticCurve::sextic_from_roots(cr(1.0), &roots).unwrap()).unwrap();
        let s = c(rng.gen_range(0.5..2.0), rng.gen_range(-1.0..1.0));
        let scaled: Vec<Complex64> = roots.iter().map(|r| r * s).collect();
        let js = absolute_invariants(&HyperellipticCurve::sextic_from_roots(c(0.3, 2.0), &scaled).unwrap()).unwrap();
        assert!(j_close(&j, &js, 1e-8));
        // x -> 1/(x - p) with p away from the roots.
        let p = c(3.1, -2.7);
        let moved: Vec<Complex64> = roots.iter().map(|r| cr(1.0) / (r - p)).collect();
        let jm = absolute_invariants(&HyperellipticCurve::sextic_from_roots(cr(1.0), &moved).unwrap()).unwrap();
        assert!(j_close(&j, &jm, 1e-8));
    }
}

#[test]
fn a_zero_has_no_absolute_invariants() {
    // A = -16 a2 a4 - 240 a0 a6 = 0 for (1, 0, -15, 0, 1, 0, 1).
    let s = HyperellipticCurve::sextic(&[1.0, 0.0, -15.0, 0.0, 1.0, 0.0, 1.0].map(cr)).unwrap();
    assert_eq!(absolute_invariants(&s).unwrap_err(), Error::AZero);
}

#[test]
fn quintic_pulls_back_to_sextic() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let roots = random_roots(&mut rng, 6);
    let s = HyperellipticCurve::sextic_from_roots(c(0.8, 0.3), &roots).unwrap();
    let (q, map) = sextic_to_quintic(&s, c(0.4, -0.2), c(-1.1, 0.5), cr(1.0)).unwrap();
    for _ in 0..20 {
        let x = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let y = q.f(x).sqrt();
        let (xx, yy) = map.forward(x, y);
        assert!(rel(yy * yy, s.f(xx)) < 1e-9);
        let (xb, yb) = map.inverse(xx, yy);
        assert!((xb - x).norm() < 1e-9 * (1.0 + x.norm()) && (yb - y).norm() < 1e-9 * (1.0 + y.norm()));
        // dX/dx by central differences.
        let h = 1e-6;
        let fd = (map.forward(x + h, y).0 - map.forward(x - h, y).0) / (2.0 * h);
        assert!(rel(map.dxx_dx(x), fd) < 1e-7);
    }
    assert!(j_close(&absolute_invariants(&s).unwrap(), &absolute_invariants(&q).unwrap(), 1e-8));
    let shifted = sextic_to_quintic(&s, cr(0.5), cr(0.5), cr(1.0));
    assert_eq!(shifted.unwrap_err(), Error::CoincidentShifts);
}

#[test]
fn quintic_normalize_moves_roots() {
    let roots: Vec<Complex64> = (0..5).map(|k| cr(k as f64)).collect();
    let q = HyperellipticCurve::quintic_from_roots(cr(1.0), &roots).unwrap();
    assert_eq!(quintic_normalize(&q, cr(1.0), cr(0.0)).unwrap().roots(), q.roots());
    let moved = quintic_normalize(&q, cr(1.0), cr(1.0)).unwrap();
    for k in -1..=3 {
        assert!(contains(moved.roots(), cr(k as f64)));
    }
    let scaled = quintic_normalize(&q, c(0.7, 0.2), c(0.1, -0.3)).unwrap();
    assert!(j_close(&absolute_invariants(&q).unwrap(), &absolute_invariants(&scaled).unwrap(), 1e-8));
    assert_eq!(quintic_normalize(&q, cr(0.0), cr(0.0)).unwrap_err(), Error::ZeroScale);
}

#[test]
fn rosenhain_parameters_are_cross_ratios() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let roots = random_roots(&mut rng, 6);
    let s = HyperellipticCurve::sextic_from_roots(cr(1.0), &roots).unwrap();
    let order = [0, 1, 2, 3, 4, 5];
    let rh = to_rosenhain(&s, &order).unwrap();
    let r = s.roots();
    // The Mobius map sending r0, r2, r4 to infinity, 0, 1.
    let m = |x: Complex64| (x - r[2]) * (r[4] - r[0]) / ((x - r[0]) * (r[4] - r[2]));
    assert!((m(r[4]) - cr(1.0)).norm() < 1e-12);
    for (k, idx) in [1, 3, 5].iter().enumerate() {
        assert!(rel(rh.coeffs()[k], m(r[*idx])) < 1e-12);
    }
    let j = absolute_invariants(&s).unwrap();
    for _ in 0..10 {
        let mut perm = order;
        for i in (1..6).rev() {
            perm.swap(i, rng.gen_range(0..=i));
        }
        let other = to_rosenhain(&s, &perm).unwrap();
        assert!(j_close(&j, &absolute_invariants(&other).unwrap(), 1e-8));
    }
}

#[test]
fn degenerate_rosenhain_parameters_are_rejected() {
    for l in [[cr(0.0), cr(2.0), cr(3.0)], [cr(1.0), cr(2.0), cr(3.0)], [cr(2.0), cr(2.0), cr(3.0)]] {
        assert_eq!(HyperellipticCurve::rosenhain(&l).unwrap_err(), Error::DegenerateDiscriminant);
    }
}
