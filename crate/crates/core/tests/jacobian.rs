//! Abel-Jacobi map, sigma and wp on random monic quintics.

use hyptr_core::curve::HyperellipticCurve;
use hyptr_core::jacobian::{
    abel_jacobi, abel_jacobi_u, half_period_characteristic, integral_between, lattice_coordinates, reduce,
    restrict_to_curve, sigma, theta_divisor, wp, CurvePoint,
};
use hyptr_core::numerics::{c, cr, Complex64, Vector2C};
use hyptr_core::periods::PeriodData;
use hyptr_core::sample::{random_monic_quintic, random_point, random_sextic};
use hyptr_core::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn lattice_residual(v: &Vector2C, pd: &PeriodData) -> f64 {
    let (n1, n2) = lattice_coordinates(v, &pd.tau);
    n1.iter().chain(n2.iter()).map(|t| (t - t.round()).abs()).fold(0.0, f64::max)
}

/// The point over `x` on the sheet continuing `y0`.
fn nearby(curve: &HyperellipticCurve, x: Complex64, y0: Complex64) -> CurvePoint {
    let y = curve.f(x).sqrt();
    CurvePoint::Finite { x, y: if (y - y0).norm() < (y + y0).norm() { y } else { -y } }
}

#[test]
fn infinity_and_branch_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..5 {
        let (curve, pd) = random_monic_quintic(&mut rng);
        assert_eq!(abel_jacobi(&CurvePoint::Infinity, &pd).unwrap().v, Vector2C::zeros());
        for e in curve.roots() {
            let v = abel_jacobi(&CurvePoint::Finite { x: *e, y: cr(0.0) }, &pd).unwrap().v;
            assert!(lattice_residual(&(v * cr(2.0)), &pd) < 1e-7);
            assert!(half_period_characteristic(&v, &pd.tau, 1e-6).is_ok());
        }
    }
}

#[test]
fn involution_negates_the_image() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (curve, pd) = random_monic_quintic(&mut rng);
    for _ in 0..10 {
        let p = random_point(&mut rng, &curve);
        let a = abel_jacobi(&p, &pd).unwrap().v;
        let b = abel_jacobi(&p.involution(), &pd).unwrap().v;
        assert!(lattice_residual(&(a + b), &pd) < 1e-7);
    }
}

#[test]
fn derivative_is_the_holomorphic_frame() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (curve, _) = random_monic_quintic(&mut rng);
    let h = 1e-5;
    for _ in 0..5 {
        let p = random_point(&mut rng, &curve);
        let (x, y) = (p.x().unwrap(), p.y().unwrap());
        let expected = Vector2C::new(cr(1.0) / (y * 2.0), x / (y * 2.0));
        let plus = nearby(&curve, x + h, y);
        let minus = nearby(&curve, x - h, y);
        let direct = integral_between(&curve, &minus, &plus).unwrap() / cr(2.0 * h);
        assert!((direct - expected).norm() < 1e-6 * expected.norm().max(1.0));
        let from_base = (abel_jacobi_u(&curve, &plus).unwrap() - abel_jacobi_u(&curve, &minus).unwrap()) / cr(2.0 * h);
        assert!((from_base - expected).norm() < 1e-6 * expected.norm().max(1.0));
    }
}

#[test]
fn reduction_lands_in_the_fundamental_box() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (_, pd) = random_sextic(&mut rng);
    let v = Vector2C::new(c(3.7, -1.2), c(-2.4, 4.1));
    let r = reduce(&v, &pd.tau);
    let (n1, n2) = lattice_coordinates(&r, &pd.tau);
    for t in n1.iter().chain(n2.iter()) {
        assert!((-0.5 - 1e-12..0.5 + 1e-12).contains(t));
    }
    assert!(lattice_residual(&(v - r), &pd) < 1e-10);
    let quarter = Vector2C::new(cr(0.25), cr(0.0));
    assert!(matches!(half_period_characteristic(&quarter, &pd.tau, 1e-6), Err(Error::CharacteristicResolutionFailed(_))));
}

#[test]
fn sigma_parity_and_divisor() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..3 {
        let (curve, pd) = random_monic_quintic(&mut rng);
        let td = theta_divisor(&pd).unwrap();
        assert!(!td.delta.is_even());
        assert!(sigma(&Vector2C::zeros(), &pd, &td.delta).unwrap().norm() < 1e-12);
        let u = Vector2C::new(c(0.13, -0.21), c(0.07, 0.3));
        let s = sigma(&u, &pd, &td.delta).unwrap();
        assert!((sigma(&(-u), &pd, &td.delta).unwrap() + s).norm() < 1e-9 * s.norm().max(1.0));
        for _ in 0..5 {
            let p = random_point(&mut rng, &curve);
            let up = abel_jacobi_u(&curve, &p).unwrap();
            let off = sigma(&(up + Vector2C::new(cr(0.05), cr(0.02))), &pd, &td.delta).unwrap();
            assert!(sigma(&up, &pd, &td.delta).unwrap().norm() < 1e-8 * off.norm().max(1e-3));
        }
    }
}

#[test]
fn wp_is_even_periodic_and_differentiates() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (_, pd) = random_monic_quintic(&mut rng);
    let delta = theta_divisor(&pd).unwrap().delta;
    let u = Vector2C::new(c(0.11, 0.19), c(-0.23, 0.05));
    let w = wp(&u, &pd, &delta).unwrap();
    let scale = w.wp2.norm().max(1.0);
    assert!((wp(&(-u), &pd, &delta).unwrap().wp2 - w.wp2).norm() < 1e-8 * scale);
    let pa = pd.pi_a_omega();
    for m in [[1.0, 0.0], [0.0, 1.0]] {
        let mv = Vector2C::new(cr(m[0]), cr(m[1]));
        for shift in [pa.transpose() * mv, pa.transpose() * pd.tau * mv] {
            let moved = wp(&(u + shift), &pd, &delta).unwrap().wp2;
            assert!((moved - w.wp2).norm() < 1e-7 * scale);
        }
    }
    let h = 1e-5;
    for k in 0..2 {
        let mut e = Vector2C::zeros();
        e[k] = cr(h);
        let d = (wp(&(u + e), &pd, &delta).unwrap().wp2 - wp(&(u - e), &pd, &delta).unwrap().wp2) / cr(2.0 * h);
        for i in 0..2 {
            for j in 0..2 {
                assert!((d[(i, j)] - w.wp3[i][j][k]).norm() < 1e-5 * scale);
            }
        }
    }
}

#[test]
fn wp_on_a_pair_of_points_gives_symmetric_functions() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (curve, pd) = random_monic_quintic(&mut rng);
    let delta = theta_divisor(&pd).unwrap().delta;
    for _ in 0..5 {
        let p1 = random_point(&mut rng, &curve);
        let p2 = random_point(&mut rng, &curve);
        let u = abel_jacobi_u(&curve, &p1).unwrap() + abel_jacobi_u(&curve, &p2).unwrap();
        let w = wp(&u, &pd, &delta).unwrap().wp2;
        let (x1, x2) = (p1.x().unwrap(), p2.x().unwrap());
        assert!((w[(1, 1)] - (x1 + x2)).norm() < 1e-6 * (x1 + x2).norm().max(1.0));
        assert!((w[(0, 1)] + x1 * x2).norm() < 1e-6 * (x1 * x2).norm().max(1.0));
    }
}

#[test]
fn restriction_recovers_the_point() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (curve, pd) = random_monic_quintic(&mut rng);
    let delta = theta_divisor(&pd).unwrap().delta;
    for _ in 0..5 {
        let p = random_point(&mut rng, &curve);
        let (x, y) = restrict_to_curve(&p, &pd, &delta).unwrap();
        let (x0, y0) = (p.x().unwrap(), p.y().unwrap());
        assert!((x - x0).norm() < 1e-6 * x0.norm().max(1.0));
        assert!((y - y0).norm() < (y + y0).norm(), "recovered y on the wrong sheet");
    }
    let e = CurvePoint::Finite { x: curve.roots()[2], y: cr(0.0) };
    assert!(matches!(restrict_to_curve(&e, &pd, &delta), Err(Error::WeierstrassPointLimit)));
    let (sextic, spd) = random_sextic(&mut rng);
    let q = random_point(&mut rng, &sextic);
    assert!(matches!(restrict_to_curve(&q, &spd, &delta), Err(Error::ModelMismatch(_))));
}
