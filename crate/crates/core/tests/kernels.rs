//! Bergman and Schiffer kernels: the theta, wp and algebraic forms against
//! each other, local expansions against direct values, and marking changes.

use hyptr_core::jacobian::{theta_divisor, CurvePoint};
use hyptr_core::kernels::{
    bergman_algebraic, bergman_theta, bergman_wp, g6, schiffer, KernelChoice, KernelExpansion,
};
use hyptr_core::numerics::{c, cr, Complex64};
use hyptr_core::periods::IMat4;
use hyptr_core::sample::{random_monic_quintic, random_point, random_sextic};
use hyptr_core::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * b.norm().max(1.0)
}

#[test]
fn g6_is_symmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..20 {
        let a: [Complex64; 7] = std::array::from_fn(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let (x1, x2) = (c(rng.gen_range(-2.0..2.0), 0.3), c(-0.7, rng.gen_range(-2.0..2.0)));
        assert!(close(g6(&a, x1, x2), g6(&a, x2, x1), 1e-14));
    }
}

#[test]
fn three_forms_agree_and_are_symmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for k in 0..6 {
        let (curve, pd) = if k % 2 == 0 { random_sextic(&mut rng) } else { random_monic_quintic(&mut rng) };
        let delta = theta_divisor(&pd).unwrap().delta;
        for _ in 0..5 {
            let p = random_point(&mut rng, &curve);
            let q = random_point(&mut rng, &curve);
            let alg = bergman_algebraic(&p, &q, &pd).unwrap().scalar_part;
            let th = bergman_theta(&p, &q, &pd, &delta).unwrap().scalar_part;
            let w = bergman_wp(&p, &q, &pd, &delta, KernelChoice::Bergman).unwrap().scalar_part;
            assert!(close(th, alg, 1e-6), "theta {th} vs algebraic {alg}");
            assert!(close(w, alg, 1e-6), "wp {w} vs algebraic {alg}");
            assert!(close(bergman_algebraic(&q, &p, &pd).unwrap().scalar_part, alg, 1e-12));
            assert!(close(bergman_theta(&q, &p, &pd, &delta).unwrap().scalar_part, th, 1e-8));
            let flipped = bergman_theta(&p.involution(), &q.involution(), &pd, &delta).unwrap().scalar_part;
            assert!(close(flipped, th, 1e-8));
        }
    }
}

#[test]
fn local_expansion_matches_direct_values() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (curve, pd) = random_sextic(&mut rng);
    let ke = KernelExpansion::new(&curve, pd.kappa(), 24).unwrap();
    assert!(ke.division_residual < 1e-8);
    let (z, w) = (c(0.06, 0.03), c(-0.02, 0.05));
    for (ia, ib) in [(0usize, 0usize), (0, 3), (2, 5), (4, 4)] {
        let (ca, cb) = (&ke.charts[ia], &ke.charts[ib]);
        let (x1, y1) = (ca.r + ca.rho * z * z, z * ca.s.eval(z));
        let (x2, y2) = (cb.r + cb.rho * w * w, w * cb.s.eval(w));
        assert!((y1 * y1 - curve.f(x1)).norm() < 1e-10 && (y2 * y2 - curve.f(x2)).norm() < 1e-10);
        let p = CurvePoint::Finite { x: x1, y: y1 };
        let q = CurvePoint::Finite { x: x2, y: y2 };
        // dx/2y = rho/s(z) dz in the chart.
        let direct = bergman_algebraic(&p, &q, &pd).unwrap().scalar_part * ca.rho / ca.s.eval(z) * cb.rho / cb.s.eval(w);
        let mut series = ke.regular[ia][ib].eval(z, w);
        if ia == ib {
            series += cr(1.0) / ((z - w) * (z - w));
        }
        assert!(close(series, direct, 1e-8), "({ia},{ib}): {series} vs {direct}");
        assert!(close(ca.coordinate(x1, y1), z, 1e-12));
        let vals = ke.basis_values(ib, x1, y1, 6).unwrap();
        for (k, v) in vals.iter().enumerate() {
            let from_series = ke.basis_series(ia, ib, k).eval(z) * ca.s.eval(z) / ca.rho;
            assert!(close(from_series, *v, 1e-7), "basis ({ia},{ib},{k})");
        }
    }
}

#[test]
fn schiffer_is_invariant_under_marking_change() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (curve, pd) = random_sextic(&mut rng);
    let gammas: [IMat4; 2] = [
        [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]],
        [[1, 0, 0, 0], [0, 1, 0, 0], [1, 1, 1, 0], [1, 0, 0, 1]],
    ];
    for g in gammas {
        let moved = pd.act(&g).unwrap();
        let mut bergman_moved = false;
        for _ in 0..5 {
            let p = random_point(&mut rng, &curve);
            let q = random_point(&mut rng, &curve);
            let s0 = schiffer(&p, &q, &pd).unwrap().scalar_part;
            let s1 = schiffer(&p, &q, &moved).unwrap().scalar_part;
            assert!(close(s1, s0, 1e-6), "{s1} vs {s0}");
            let b0 = bergman_algebraic(&p, &q, &pd).unwrap().scalar_part;
            let b1 = bergman_algebraic(&p, &q, &moved).unwrap().scalar_part;
            bergman_moved |= !close(b1, b0, 1e-6);
        }
        assert!(bergman_moved, "the holomorphic kernel should depend on the marking");
    }
}

#[test]
fn schiffer_differs_from_bergman_by_the_nonholomorphic_term() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (curve, pd) = random_sextic(&mut rng);
    let p = random_point(&mut rng, &curve);
    let q = random_point(&mut rng, &curve);
    let s = schiffer(&p, &q, &pd).unwrap();
    let b = bergman_algebraic(&p, &q, &pd).unwrap();
    assert!((s.matrix_part - b.matrix_part + pd.nonholomorphic_y()).norm() < 1e-12);
    let y = pd.nonholomorphic_y();
    assert!((y - y.transpose()).norm() < 1e-8 * y.norm());
}

#[test]
fn degenerate_pairs_are_rejected() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (curve, pd) = random_sextic(&mut rng);
    let delta = theta_divisor(&pd).unwrap().delta;
    let p = random_point(&mut rng, &curve);
    assert!(matches!(bergman_algebraic(&p, &p.involution(), &pd), Err(Error::CoincidentX)));
    assert!(matches!(bergman_theta(&p, &p, &pd, &delta), Err(Error::CoincidentPoints)));
    assert!(matches!(bergman_algebraic(&p, &CurvePoint::Infinity, &pd), Err(Error::InvalidInput(_))));
}
