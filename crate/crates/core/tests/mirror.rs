//! Mirror curve reduction, the differential near branch points and the
//! mirror-map series.

use hyptr_core::kernels::LocalChart;
use hyptr_core::mirror::{
    delta_lambda_series, lambda_series, lambda_series_with_branch, log_ratio_series, mirror_maps, mirror_sextic,
    MirrorModuli,
};
use hyptr_core::numerics::{c, cr, Complex64};
use hyptr_core::sample::random_mirror_moduli;
use hyptr_core::Error;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * b.norm().max(1.0)
}

#[test]
fn sextic_coefficients_examples() {
    let t = c(0.3, -0.1);
    let s = mirror_sextic(&MirrorModuli::new(cr(0.0), cr(0.0), t)).unwrap();
    let expected = [-t, cr(0.0), cr(0.0), cr(0.0), cr(0.25), cr(0.5), cr(0.25)];
    assert_eq!(s.coeffs(), &expected);
    let s = mirror_sextic(&MirrorModuli::new(cr(1.0), cr(1.0), cr(1.0))).unwrap();
    let expected = [-0.75, 0.5, 0.75, 1.0, 0.75, 0.5, 0.25].map(cr);
    assert_eq!(s.coeffs(), &expected);
    let q2 = c(0.4, 0.2);
    let degenerate = MirrorModuli::new(cr(0.1), q2, q2 * q2 / 4.0);
    assert!(matches!(mirror_sextic(&degenerate), Err(Error::LeadingCoefficientZero)));
}

#[test]
fn sextic_points_lie_on_the_mirror_curve() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..10 {
        let m = random_mirror_moduli(&mut rng);
        let s = mirror_sextic(&m).unwrap();
        let x = c(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
        for sign in [1.0, -1.0] {
            let yt = s.f(x).sqrt() * sign;
            let y = yt - m.h().eval(x);
            let lhs = cr(1.0) + x + y + m.q1 * x * x + m.q2 * x.powu(3) + m.q3 * x.powu(6) / y;
            assert!(lhs.norm() < 1e-12 * (1.0 + y.norm() + x.norm().powi(6)));
        }
    }
}

/// `Y = y~ - h(x)` at chart coordinate `z`, with `y~` continued from `z s(0)`.
fn direct_y(m: &MirrorModuli, chart: &LocalChart, z: Complex64) -> (Complex64, Complex64) {
    let curve = mirror_sextic(m).unwrap();
    let x = chart.r + chart.rho * z * z;
    let guess = z * chart.s.at(0);
    let yt = curve.f(x).sqrt();
    let yt = if (yt - guess).norm() < (yt + guess).norm() { yt } else { -yt };
    (x, yt - m.h().eval(x))
}

#[test]
fn lambda_expansion_matches_direct_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut checked = 0;
    for _ in 0..5 {
        let m = random_mirror_moduli(&mut rng);
        let curve = mirror_sextic(&m).unwrap();
        for idx in 0..6 {
            let chart = LocalChart::new(&curve, idx, 30).unwrap();
            let Ok(l) = lambda_series(&m, &chart, 24) else { continue };
            let z = chart.s.at(0).norm().recip().min(1.0) * 0.02 * c(1.0, 0.3);
            let (x, y) = direct_y(&m, &chart, z);
            let direct = y.ln() * chart.rho * z * 2.0 / x;
            assert!(close(l.eval(z), direct, 1e-9), "{} vs {}", l.eval(z), direct);
            let shifted = lambda_series_with_branch(&m, &chart, 24, 1).unwrap();
            let two_pi_i = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
            assert!(close(shifted.eval(z) - l.eval(z), two_pi_i * chart.rho * z * 2.0 / x, 1e-9));
            checked += 1;
        }
    }
    assert!(checked >= 10);
}

#[test]
fn difference_across_the_involution() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut checked = 0;
    for _ in 0..5 {
        let m = random_mirror_moduli(&mut rng);
        let curve = mirror_sextic(&m).unwrap();
        for idx in 0..6 {
            let chart = LocalChart::new(&curve, idx, 30).unwrap();
            let (Ok(l), Ok(d), Ok(r)) =
                (lambda_series(&m, &chart, 24), delta_lambda_series(&m, &chart, 24), log_ratio_series(&m, &chart, 24))
            else {
                continue;
            };
            let lead = r.normalized();
            for k in (lead.lead_order()..lead.trunc_order()).filter(|k| k % 2 == 0) {
                assert!(r.at(k).norm() < 1e-10, "log ratio not odd at {k}");
            }
            let z = chart.s.at(0).norm().recip().min(1.0) * 0.02 * c(0.8, -0.4);
            assert!(close(d.eval(z), l.eval(z) + l.eval(-z), 1e-9));
            // Independent of the log branch.
            let l1 = lambda_series_with_branch(&m, &chart, 24, -2).unwrap();
            assert!(close(l1.eval(z) + l1.eval(-z), d.eval(z), 1e-9));
            // Leading coefficient from two direct evaluations at +-h.
            let h = 1e-4;
            let (x, yp) = direct_y(&m, &chart, cr(h));
            let (_, ym) = direct_y(&m, &chart, cr(-h));
            let two_point = (yp.ln() - ym.ln()) * chart.rho * 2.0 * h / x / (h * h);
            assert!(close(two_point, d.at(2), 1e-6), "{two_point} vs {}", d.at(2));
            checked += 1;
        }
    }
    assert!(checked >= 10);
}

fn factorial(n: i128) -> i128 {
    (1..=n).product()
}

#[test]
fn mirror_map_series_structure() {
    let ms = mirror_maps(12).unwrap();
    // Pure s3 part of A4: -(2d-1)!/(d!)^2.
    for d in 1..=12u32 {
        let expected = Ratio::new(-factorial(2 * d as i128 - 1), factorial(d as i128).pow(2));
        assert_eq!(ms.a[2].get(&[0, 0, d]).copied().unwrap_or_default(), expected, "d = {d}");
    }
    assert!(ms.a[0].keys().all(|m| m[0] > 0), "A2 has a term without s1");
    let s = [c(0.01, 0.005), c(-0.02, 0.01), c(0.015, -0.01)];
    let ratio = ms.eval_q(3, s) / s[2];
    assert!(close(ratio, (ms.eval_a(4, s) * -2.0).exp(), 1e-12));
    let s3 = [cr(0.0), cr(0.0), cr(0.01)];
    let series = ms.eval_q(3, s3) / s3[2];
    assert!(close(series, cr(1.0) + s3[2] * 2.0, 1e-3));
    assert_eq!(ms.eval_a(1, s), cr(0.0));
    assert!(matches!(mirror_maps(13), Err(Error::InvalidInput(_))));
}
