//! Topological recursion on the mirror curve: seeds, symmetry, pole bounds,
//! kernel choices and the genus-one free energy.

use hyptr_core::kernels::KernelChoice;
use hyptr_core::numerics::linalg::{det2, inv2};
use hyptr_core::numerics::{cr, Complex64, Matrix2C};
use hyptr_core::periods::{compute, IMat4};
use hyptr_core::recursion::{
    evaluate_with, f1, omega03_closed_form, omega03_residue_form, pole_bound, Recursion, SpectralCurve,
};
use hyptr_core::sample::{random_mirror_moduli, random_point, random_sextic};
use hyptr_core::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Pt = (Complex64, Complex64);

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * b.norm().max(1.0)
}

fn points(rng: &mut impl Rng, sc: &SpectralCurve, n: usize) -> Vec<Pt> {
    (0..n)
        .map(|_| {
            let p = random_point(rng, sc.curve());
            (p.x().unwrap(), p.y().unwrap())
        })
        .collect()
}

#[test]
fn omega03_matches_the_residue_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..2 {
        let m = random_mirror_moduli(&mut rng);
        let mut rec = Recursion::new(SpectralCurve::new(m, KernelChoice::Bergman, 0, 3).unwrap());
        let w = rec.omega(0, 3).unwrap();
        for _ in 0..3 {
            let pts = points(&mut rng, &rec.curve, 3);
            let v = rec.evaluate(&w, &pts).unwrap();
            let xs = [pts[0].0, pts[1].0, pts[2].0];
            let expected = omega03_residue_form(&rec.curve, xs);
            assert!(close(v, expected, 1e-7), "{v} vs {expected}");
            // Only the weights differ between the two closed forms.
            assert!(omega03_closed_form(&rec.curve, xs).is_finite());
        }
    }
}

#[test]
fn correlators_are_symmetric_and_linear() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let m = random_mirror_moduli(&mut rng);
    let mut rec = Recursion::new(SpectralCurve::new(m, KernelChoice::Bergman, 1, 3).unwrap());
    for (g, n) in [(0, 4), (1, 2), (1, 3)] {
        let w = rec.omega(g, n).unwrap();
        let (per_arg, total) = w.pole_orders(1e-12);
        assert!(per_arg <= pole_bound(g, n) && total <= (6 * g + 4 * n) - 6);
        let pts = points(&mut rng, &rec.curve, n);
        let v = rec.evaluate(&w, &pts).unwrap();
        let mut rev = pts.clone();
        rev.reverse();
        assert!(close(rec.evaluate(&w, &rev).unwrap(), v, 1e-7));
        rev.rotate_left(1);
        assert!(close(rec.evaluate(&w, &rev).unwrap(), v, 1e-7));
        let s = Complex64::new(2.0, -0.5);
        assert!(close(rec.evaluate(&w.scaled(s), &pts).unwrap(), v * s, 1e-12));
    }
    let w11 = rec.omega(1, 1).unwrap();
    assert!(w11.pole_orders(1e-12).0 <= 4);
}

#[test]
fn schiffer_with_zero_y_is_bergman() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let m = random_mirror_moduli(&mut rng);
    let b = SpectralCurve::new(m, KernelChoice::Bergman, 2, 1).unwrap();
    let s = SpectralCurve::with_y(m, b.periods.clone(), KernelChoice::Schiffer, Matrix2C::zeros(), 2, 1).unwrap();
    let mut rb = Recursion::new(b);
    let mut rs = Recursion::new(s);
    assert_eq!(rb.omega(1, 1).unwrap().blocks, rs.omega(1, 1).unwrap().blocks);
    assert_eq!(rb.free_energy(2).unwrap().value, rs.free_energy(2).unwrap().value);
}

#[test]
fn schiffer_correlators_do_not_see_the_marking() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let m = random_mirror_moduli(&mut rng);
    let base = SpectralCurve::new(m, KernelChoice::Schiffer, 1, 2).unwrap();
    let gamma: IMat4 = [[1, 0, 0, 0], [0, 1, 0, 0], [1, 1, 1, 0], [1, 0, 0, 1]];
    let moved_pd = base.periods.act(&gamma).unwrap();
    let y = moved_pd.nonholomorphic_y();
    let moved = SpectralCurve::with_y(m, moved_pd.clone(), KernelChoice::Schiffer, y, 1, 2).unwrap();
    let holo = SpectralCurve::with_y(m, moved_pd, KernelChoice::Bergman, Matrix2C::zeros(), 1, 2).unwrap();
    let bergman = SpectralCurve::new(m, KernelChoice::Bergman, 1, 2).unwrap();
    let pts = points(&mut rng, &base, 2);
    let mut values = Vec::new();
    for sc in [base, moved, bergman, holo] {
        let mut r = Recursion::new(sc);
        let w = r.omega(1, 2).unwrap();
        values.push(r.evaluate(&w, &pts).unwrap());
    }
    assert!(close(values[1], values[0], 1e-6), "{} vs {}", values[1], values[0]);
    assert!(!close(values[3], values[2], 1e-6));
}

#[test]
fn genus_two_free_energy_is_stable_under_deeper_truncation() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let m = random_mirror_moduli(&mut rng);
    let shallow = SpectralCurve::new(m, KernelChoice::Bergman, 2, 1).unwrap();
    let deep = SpectralCurve::with_y(m, shallow.periods.clone(), KernelChoice::Bergman, Matrix2C::zeros(), 2, 3).unwrap();
    assert!(deep.order > shallow.order);
    let a = Recursion::new(shallow).free_energy(2).unwrap();
    let b = Recursion::new(deep).free_energy(2).unwrap();
    assert!(a.value.is_finite());
    assert!((a.value - b.value).norm() < 1e-7 * b.value.norm(), "{} vs {}", a.value, b.value);
    assert!(close(a.eo_normalized, -a.value / (2.0 * (2.0 - 4.0)), 1e-15));
}

#[test]
fn genus_one_free_energy_under_relabeling_and_marking_change() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..3 {
        let (curve, pd) = random_sextic(&mut rng);
        let base = f1(&pd).unwrap().monic.defining;
        // Relabeling roots keeps the real part; the imaginary part moves by log branches.
        let relabeled = curve.reordered(&[5, 4, 3, 2, 1, 0]).unwrap();
        let other = f1(&compute(&relabeled).unwrap()).unwrap().monic.defining;
        assert!((other.re - base.re).abs() < 1e-8);
        let steps = (other.im - base.im) / (std::f64::consts::PI / 8.0);
        assert!((steps - steps.round()).abs() < 1e-8);
        // A marking change shifts the real part by half the log of the automorphy factor.
        let gamma: IMat4 = [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]];
        let moved = pd.act(&gamma).unwrap();
        let shifted = f1(&moved).unwrap().monic.defining;
        let factor = det2(&(moved.pi_a_omega() * inv2(&pd.pi_a_omega()).unwrap()));
        assert!(((shifted.re - base.re) - 0.5 * factor.norm().ln()).abs() < 1e-8);
    }
}

#[test]
fn invalid_requests_are_rejected() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let m = random_mirror_moduli(&mut rng);
    let mut rec = Recursion::new(SpectralCurve::new(m, KernelChoice::Bergman, 0, 3).unwrap());
    assert!(matches!(rec.omega(0, 2), Err(Error::InvalidInput(_))));
    assert!(matches!(rec.omega(1, 0), Err(Error::InvalidInput(_))));
    assert!(matches!(rec.omega(2, 1), Err(Error::InvalidInput(_))));
    assert!(matches!(rec.free_energy(1), Err(Error::InvalidInput(_))));
    let w = rec.omega(0, 3).unwrap();
    let pts = points(&mut rng, &rec.curve, 2);
    assert!(matches!(evaluate_with(&rec.curve, &w, &pts), Err(Error::InvalidInput(_))));
    let r = rec.curve.curve().roots()[1];
    let at_branch = vec![(r, cr(0.0)), pts[0], pts[1]];
    assert!(rec.evaluate(&w, &at_branch).is_err());
}
