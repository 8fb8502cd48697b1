//! Markings, periods and their variation, checked against finite differences
//! and integer linear algebra.

use std::f64::consts::PI;

use hyptr_core::curve::HyperellipticCurve;
use hyptr_core::numerics::linalg::{imag_eigenvalues, inv4, j4, max_abs2, max_abs4};
use hyptr_core::numerics::{c, cr, Complex64, Matrix2C, Matrix4C, QuadratureOptions};
use hyptr_core::periods::{
    build_marking, build_marking_with, periods, periods_with, rauch_variation, IMat4, MarkingOptions, J4,
};
use hyptr_core::sample::{random_monic_quintic, random_sextic};
use hyptr_core::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn det_int(m: &IMat4) -> i64 {
    let f = Matrix4C::from_fn(|i, j| cr(m[i][j] as f64));
    f.determinant().re.round() as i64
}

fn to_complex(m: &IMat4) -> Matrix4C {
    Matrix4C::from_fn(|i, j| cr(m[i][j] as f64))
}

#[test]
fn markings_are_symplectic_and_unimodular() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for k in 0..20 {
        let (c, _) = if k % 2 == 0 { random_sextic(&mut rng) } else { random_monic_quintic(&mut rng) };
        let m = build_marking(&c).unwrap();
        assert_eq!(m.intersection_form, J4);
        assert_eq!(det_int(&m.cycle_vectors).abs(), 1);
    }
}

#[test]
fn riemann_relations_hold() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let plus = j4() * Complex64::new(0.0, 2.0 * PI);
    for k in 0..30 {
        let (_, pd) = if k % 3 == 0 { random_monic_quintic(&mut rng) } else { random_sextic(&mut rng) };
        let p = pd.forms_by_cycles();
        assert!(max_abs4(&(p * j4() * p.transpose() - plus)) < 1e-7);
        assert!(pd.bilinear_residual() < 1e-7);
        assert!(max_abs2(&(pd.tau - pd.tau.transpose())) < 1e-8);
        assert!(imag_eigenvalues(&pd.tau).0 > 0.0);
        assert!(pd.quasi_period_asymmetry() < 1e-7 * pd.kappa().norm().max(1.0));
    }
}

#[test]
fn doubling_quadrature_nodes_changes_little() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (c, pd) = random_sextic(&mut rng);
    let fine = QuadratureOptions { initial_nodes: 128, max_nodes: 4096, tolerance: 1e-13 };
    let pf = periods_with(&c, &pd.marking, &fine).unwrap();
    assert!(max_abs4(&(pf.pi - pd.pi)) < 1e-9);
}

#[test]
fn quadrature_failure_is_reported() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (c, pd) = random_sextic(&mut rng);
    let starved = QuadratureOptions { initial_nodes: 2, max_nodes: 4, tolerance: 1e-15 };
    assert!(matches!(periods_with(&c, &pd.marking, &starved), Err(Error::QuadratureFailure { .. })));
}

#[test]
fn another_marking_differs_by_an_integral_symplectic_matrix() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0;
    for _ in 0..5 {
        let (c, pd) = random_sextic(&mut rng);
        let Ok(m2) = build_marking_with(&c, MarkingOptions { direction_rank: 1 }) else { continue };
        let p2 = periods(&c, &m2).unwrap();
        let g = p2.pi * inv4(&pd.pi).unwrap();
        let rounded = g.map(|z| cr(z.re.round()));
        assert!(max_abs4(&(g - rounded)) < 1e-8);
        assert!(max_abs4(&(rounded * j4() * rounded.transpose() - j4())) < 1e-12);
        checked += 1;
    }
    assert!(checked > 0);
}

#[test]
fn explicit_marking_change_multiplies_rows() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (_, pd) = random_sextic(&mut rng);
    let gammas: [IMat4; 3] = [J4, [[1, 0, 0, 0], [0, 1, 0, 0], [1, 1, 1, 0], [1, 0, 0, 1]], [[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, -1, 1]]];
    for g in gammas {
        let moved = pd.act(&g).unwrap();
        assert!(max_abs4(&(moved.pi - to_complex(&g) * pd.pi)) < 1e-10);
    }
}

fn shifted(curve: &HyperellipticCurve, k: usize, h: Complex64) -> HyperellipticCurve {
    let mut r = curve.roots().to_vec();
    r[k] += h;
    HyperellipticCurve::quintic_from_roots(cr(1.0), &r).unwrap()
}

#[test]
fn rauch_variation_matches_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    for _ in 0..3 {
        let (c, pd) = random_monic_quintic(&mut rng);
        let mut sum = Matrix2C::zeros();
        for k in 0..5 {
            let rv = rauch_variation(&pd, k).unwrap();
            let h = 1e-5;
            let plus = shifted(&c, k, cr(h));
            let minus = shifted(&c, k, cr(-h));
            // Keep the branch-point labels aligned with the unperturbed curve.
            if (plus.roots()[k] - c.roots()[k]).norm() > 2.0 * h || (minus.roots()[k] - c.roots()[k]).norm() > 2.0 * h {
                continue;
            }
            let pp = periods(&plus, &pd.marking).unwrap();
            let pm = periods(&minus, &pd.marking).unwrap();
            let fd = (pp.pi - pm.pi) / cr(2.0 * h);
            let fdt = (pp.tau - pm.tau) / cr(2.0 * h);
            assert!(max_abs4(&(rv.pi - fd)) < 1e-4 * max_abs4(&fd).max(1.0), "k = {k}");
            assert!(max_abs2(&(rv.tau - fdt)) < 1e-4 * max_abs2(&fdt).max(1.0));
            assert!(max_abs2(&(rv.tau - rv.tau.transpose())) < 1e-8);
            sum += rv.tau;
            checked += 1;
        }
        // Translating every root leaves tau unchanged.
        assert!(max_abs2(&sum) < 1e-6);
    }
    assert_eq!(checked, 15);
}

#[test]
fn rauch_variation_needs_a_monic_quintic() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (_, pd) = random_sextic(&mut rng);
    assert!(matches!(rauch_variation(&pd, 0), Err(Error::ModelMismatch(_))));
    let q = HyperellipticCurve::quintic_from_roots(c(2.0, 0.5), &[cr(-1.0), cr(0.0), c(0.5, 1.0), cr(1.5), c(-0.5, -1.0)]).unwrap();
    let pq = periods(&q, &build_marking(&q).unwrap()).unwrap();
    assert!(matches!(rauch_variation(&pq, 0), Err(Error::ModelMismatch(_))));
}
