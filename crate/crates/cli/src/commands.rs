//! The subcommands other than `verify` and `replay`.

use std::collections::BTreeMap;

use hyptr_core::curve::{BinaryInvariants, HyperellipticCurve};
use hyptr_core::jacobian::CurvePoint;
use hyptr_core::kernels::KernelChoice;
use hyptr_core::mirror::{mirror_maps, mirror_sextic, MirrorModuli};
use hyptr_core::numerics::linalg::max_abs2;
use hyptr_core::numerics::{Complex64, Matrix2C, Vector2C};
use hyptr_core::periods::{build_marking, periods_with, PeriodData};
use hyptr_core::recursion::{f1, omega03_closed_form, omega03_residue_form, pole_bound, total_pole_bound, Recursion, SpectralCurve};
use hyptr_core::theta::{theta, ThetaCharacteristic};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::config::Config;
use crate::error::{CliError, CliResult};
use crate::input;
use crate::report::{c, cell, entries2, entries4, m2, m4, Report, Table};
use crate::{verify, Command};

/// Entries below this fraction of the largest coefficient are not listed.
const ENTRY_CUTOFF: f64 = 1e-13;

pub fn run(command: &Command, seed: u64, cfg: &Config) -> CliResult<Report> {
    match command {
        Command::Invariants { curve } => invariants(&input::curve(curve)?),
        Command::Periods { curve } => periods(&input::curve(curve)?, cfg),
        Command::Theta { characteristic, tau, v, derivs } => theta_cmd(characteristic, tau, v.as_deref(), *derivs),
        Command::Recurse { q1, q2, q3, g, n, kernel, points, at } => {
            recurse(input::moduli(q1, q2, q3)?, *g, *n, (*kernel).into(), *points, at.as_deref(), seed, cfg)
        }
        Command::FreeEnergy { q1, q2, q3, g, kernel } => free_energy(input::moduli(q1, q2, q3)?, *g, (*kernel).into(), cfg),
        Command::MirrorMaps { degree, s } => mirror(*degree, s.as_deref()),
        Command::Verify { suite, curves } => verify::run(*suite, *curves, seed, cfg),
        Command::Replay { .. } => Err(CliError::usage("replay cannot be nested")),
    }
}

fn curve_json(curve: &HyperellipticCurve) -> Value {
    json!({
        "model": curve.model(),
        "coeffs": curve.coeffs().iter().map(|z| c(*z)).collect::<Vec<_>>(),
        "roots": curve.roots().iter().map(|z| c(*z)).collect::<Vec<_>>(),
    })
}

fn plain(report_json: Value, table: Table) -> Report {
    Report { json: report_json, table, residuals: BTreeMap::new(), pass: None }
}

fn invariants(curve: &HyperellipticCurve) -> CliResult<Report> {
    let sextic = curve.sextic_closure()?;
    let inv = BinaryInvariants::of(&sextic)?;
    // A = 0 leaves the absolute invariants undefined but is not an error here.
    let abs = inv.absolute().ok();
    let opt = |z: Option<Complex64>| z.map(c).unwrap_or(Value::Null);
    let json = json!({
        "curve": curve_json(curve),
        "sextic_coeffs": sextic.coeffs().iter().map(|z| c(*z)).collect::<Vec<_>>(),
        "A": c(inv.a),
        "B": c(inv.b),
        "C": c(inv.c),
        "D": c(inv.d),
        "j1": opt(abs.map(|a| a.j1)),
        "j2": opt(abs.map(|a| a.j2)),
        "j3": opt(abs.map(|a| a.j3)),
    });
    let mut table = Table::new(&["A", "B", "C", "D", "j1", "j2", "j3"]);
    let ocell = |z: Option<Complex64>| z.map(cell).unwrap_or_default();
    table.push(vec![
        cell(inv.a),
        cell(inv.b),
        cell(inv.c),
        cell(inv.d),
        ocell(abs.map(|a| a.j1)),
        ocell(abs.map(|a| a.j2)),
        ocell(abs.map(|a| a.j3)),
    ]);
    Ok(plain(json, table))
}

fn period_data(curve: &HyperellipticCurve, cfg: &Config) -> CliResult<PeriodData> {
    let marking = build_marking(curve)?;
    Ok(periods_with(curve, &marking, &cfg.quadrature())?)
}

fn periods(curve: &HyperellipticCurve, cfg: &Config) -> CliResult<Report> {
    let pd = period_data(curve, cfg)?;
    let (kappa, y) = (pd.kappa(), pd.nonholomorphic_y());
    let bilinear = pd.bilinear_residual();
    let asym = pd.quasi_period_asymmetry();
    let tau_asym = max_abs2(&(pd.tau - pd.tau.transpose()));
    let json = json!({
        "curve": curve_json(curve),
        "rows": ["B1", "B2", "A1", "A2"],
        "columns": ["omega1", "omega2", "eta1", "eta2"],
        "pi": m4(&pd.pi),
        "tau": m2(&pd.tau),
        "kappa": m2(&kappa),
        "y": m2(&y),
        "residuals": {
            "bilinear": bilinear,
            "tau_asymmetry": tau_asym,
            "quasi_period_asymmetry": asym,
        },
    });
    let mut table = Table::new(&["quantity", "row", "col", "value"]);
    table.push_matrix("tau", entries2(&pd.tau));
    table.push_matrix("pi", entries4(&pd.pi));
    table.push_matrix("kappa", entries2(&kappa));
    table.push_matrix("y", entries2(&y));
    let residuals = BTreeMap::from([
        ("bilinear".to_string(), bilinear),
        ("tau_asymmetry".to_string(), tau_asym),
        ("quasi_period_asymmetry".to_string(), asym),
    ]);
    Ok(Report { json, table, residuals, pass: None })
}

fn theta_cmd(characteristic: &str, tau: &str, v: Option<&str>, derivs: u8) -> CliResult<Report> {
    if derivs > 3 {
        return Err(CliError::usage("--derivs is at most 3"));
    }
    let bits = input::characteristic(characteristic)?;
    let tau = input::matrix2(tau)?;
    let v = match v {
        Some(t) => input::vector2(t)?,
        None => Vector2C::zeros(),
    };
    let ch = ThetaCharacteristic::from_bits(bits);
    let t = theta(&ch, &v, &tau, derivs)?;
    let mut json = json!({
        "characteristic": characteristic,
        "parity": if ch.is_even() { "even" } else { "odd" },
        "tau": m2(&tau),
        "v": [c(v[0]), c(v[1])],
        "value": c(t.value),
        "truncation_radius": t.trunc_radius,
    });
    let mut table = Table::new(&["quantity", "index", "value"]);
    table.push(vec!["value".into(), String::new(), cell(t.value)]);
    if derivs >= 1 {
        json["gradient"] = json!([c(t.gradient[0]), c(t.gradient[1])]);
        for i in 0..2 {
            table.push(vec!["gradient".into(), i.to_string(), cell(t.gradient[i])]);
        }
    }
    if derivs >= 2 {
        json["hessian"] = m2(&t.hessian);
        for (i, j, z) in entries2(&t.hessian) {
            table.push(vec!["hessian".into(), format!("{i}{j}"), cell(z)]);
        }
    }
    if let (true, Some(third)) = (derivs >= 3, t.third) {
        json["third"] = Value::Array(
            third.iter().map(|a| Value::Array(a.iter().map(|b| Value::Array(b.iter().map(|z| c(*z)).collect())).collect())).collect(),
        );
        for (i, a) in third.iter().enumerate() {
            for (j, b) in a.iter().enumerate() {
                for (k, z) in b.iter().enumerate() {
                    table.push(vec!["third".into(), format!("{i}{j}{k}"), cell(*z)]);
                }
            }
        }
    }
    Ok(plain(json, table))
}

fn moduli_json(m: &MirrorModuli) -> Value {
    let [s1, s2, s3] = m.s();
    json!({ "q": [c(m.q1), c(m.q2), c(m.q3)], "s": [c(s1), c(s2), c(s3)] })
}

/// Spectral curve using the configured quadrature for the periods.
pub fn spectral_curve(m: MirrorModuli, kernel: KernelChoice, g: usize, n: usize, cfg: &Config) -> CliResult<SpectralCurve> {
    let curve = mirror_sextic(&m)?;
    let pd = period_data(&curve, cfg)?;
    let y = match kernel {
        KernelChoice::Bergman => Matrix2C::zeros(),
        KernelChoice::Schiffer => pd.nonholomorphic_y(),
    };
    Ok(SpectralCurve::with_y(m, pd, kernel, y, g, n)?)
}

fn check_caps(g: usize, n: usize, cfg: &Config) -> CliResult<()> {
    if g > cfg.g_cap || n > cfg.n_cap {
        return Err(CliError::usage(format!("(g, n) = ({g}, {n}) exceeds the configured caps ({}, {})", cfg.g_cap, cfg.n_cap)));
    }
    Ok(())
}

/// A point away from the branch points, sheet chosen at random.
pub fn random_point(rng: &mut ChaCha8Rng, curve: &HyperellipticCurve) -> (Complex64, Complex64) {
    let p = hyptr_core::sample::random_point(rng, curve);
    (p.x().expect("finite"), p.y().expect("finite"))
}

#[allow(clippy::too_many_arguments)]
fn recurse(m: MirrorModuli, g: usize, n: usize, kernel: KernelChoice, points: usize, at: Option<&str>, seed: u64, cfg: &Config) -> CliResult<Report> {
    check_caps(g, n, cfg)?;
    if n == 0 || 2 * g + n <= 2 {
        return Err(CliError::usage(format!("omega_{{{g},{n}}} is not produced by the recursion; need n >= 1 and 2g - 2 + n > 0")));
    }
    let sc = spectral_curve(m, kernel, g, n, cfg)?;
    let curve = sc.curve().clone();
    let mut rec = Recursion::new(sc);
    let w = rec.omega(g, n)?;
    let (per, total) = w.pole_orders(ENTRY_CUTOFF);

    let mut sets: Vec<Vec<(Complex64, Complex64)>> = Vec::new();
    if let Some(text) = at {
        let xs = input::complex_list_arg(text)?;
        if xs.len() != n {
            return Err(CliError::usage(format!("--at needs {n} abscissae")));
        }
        let pts = xs
            .iter()
            .map(|x| match CurvePoint::on_curve(&curve, *x, 1) {
                CurvePoint::Finite { x, y } => (x, y),
                CurvePoint::Infinity => unreachable!(),
            })
            .collect();
        sets.push(pts);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..points {
        sets.push((0..n).map(|_| random_point(&mut rng, &curve)).collect());
    }

    let mut evals = Vec::new();
    let mut table = Table::new(&["kind", "slots", "value"]);
    let mut residuals = BTreeMap::new();
    for pts in &sets {
        let value = rec.evaluate(&w, pts)?;
        let mut e = json!({
            "x": pts.iter().map(|p| c(p.0)).collect::<Vec<_>>(),
            "y": pts.iter().map(|p| c(p.1)).collect::<Vec<_>>(),
            "value": c(value),
        });
        table.push(vec!["evaluation".into(), pts.iter().map(|p| cell(p.0)).collect::<Vec<_>>().join(" "), cell(value)]);
        // The closed forms are in terms of x alone and assume the principal sheet.
        if (g, n) == (0, 3) && pts.iter().all(|p| (p.1 - curve.f(p.0).sqrt()).norm() < 1e-12 * (1.0 + p.1.norm())) {
            let xs = [pts[0].0, pts[1].0, pts[2].0];
            let residue = omega03_residue_form(&rec.curve, xs);
            let closed = omega03_closed_form(&rec.curve, xs);
            let r = (value - residue).norm() / residue.norm().max(1.0);
            let entry = residuals.entry("omega03_residue_form".to_string()).or_insert(0.0f64);
            *entry = entry.max(r);
            e["residue_form"] = c(residue);
            e["closed_form"] = c(closed);
        }
        evals.push(e);
    }

    let entries = w.entries(ENTRY_CUTOFF);
    for en in &entries {
        let slots = en.slots.iter().map(|(b, m)| format!("{b}:{m}")).collect::<Vec<_>>().join(" ");
        table.push(vec!["coefficient".into(), slots, cell(en.value)]);
    }
    residuals.insert("odd_residual".to_string(), w.odd_residual);
    let json = json!({
        "moduli": moduli_json(&m),
        "g": g,
        "n": n,
        "kernel": kernel,
        "kcap": rec.curve.kcap,
        "order": rec.curve.order,
        "pole_order": { "per_argument": per, "total": total, "bound": pole_bound(g, n), "total_bound": total_pole_bound(g, n) },
        "odd_residual": w.odd_residual,
        "basis": "slots (b, m): ramification point b, basis form phi_{b, 2m}",
        "entries": entries,
        "evaluations": evals,
    });
    Ok(Report { json, table, residuals, pass: None })
}

fn free_energy(m: MirrorModuli, g: usize, kernel: KernelChoice, cfg: &Config) -> CliResult<Report> {
    match g {
        0 => Err(CliError::usage("the genus-zero free energy is not computed; use g >= 1")),
        1 => {
            let curve = mirror_sextic(&m)?;
            let pd = period_data(&curve, cfg)?;
            let forms = f1(&pd)?;
            let json = json!({
                "moduli": moduli_json(&m),
                "g": 1,
                "forms": forms,
            });
            let mut table = Table::new(&["form", "value"]);
            for (name, z) in [
                ("defining", forms.as_given.defining),
                ("monic_defining", forms.monic.defining),
                ("monic_sextic", forms.monic.sextic),
                ("monic_quintic", forms.monic.quintic),
                ("monic_theta", forms.monic.theta),
            ] {
                table.push(vec![name.into(), cell(z)]);
            }
            Ok(plain(json, table))
        }
        _ => {
            check_caps(g, 1, cfg)?;
            let sc = spectral_curve(m, kernel, g, 1, cfg)?;
            let mut rec = Recursion::new(sc);
            let f = rec.free_energy(g)?;
            let json = json!({
                "moduli": moduli_json(&m),
                "g": g,
                "kernel": kernel,
                "value": c(f.value),
                "eo_normalized": c(f.eo_normalized),
            });
            let mut table = Table::new(&["g", "kernel", "value", "eo_normalized"]);
            table.push(vec![g.to_string(), format!("{kernel:?}").to_lowercase(), cell(f.value), cell(f.eo_normalized)]);
            Ok(plain(json, table))
        }
    }
}

fn mirror(degree: u32, s: Option<&str>) -> CliResult<Report> {
    let series = mirror_maps(degree)?;
    let mut table = Table::new(&["series", "s1", "s2", "s3", "coefficient"]);
    let mut a_json = serde_json::Map::new();
    for (k, map) in series.a.iter().enumerate() {
        let name = format!("A{}", k + 2);
        let terms: Vec<Value> = map
            .iter()
            .map(|(e, v)| {
                table.push(vec![name.clone(), e[0].to_string(), e[1].to_string(), e[2].to_string(), v.to_string()]);
                json!({ "exponents": e, "value": v.to_string() })
            })
            .collect();
        a_json.insert(name, Value::Array(terms));
    }
    let mut q_json = serde_json::Map::new();
    for (k, map) in series.q.iter().enumerate() {
        let name = format!("Q{}/s{}", k + 1, k + 1);
        let terms: Vec<Value> = map
            .iter()
            .map(|(e, v)| {
                table.push(vec![name.clone(), e[0].to_string(), e[1].to_string(), e[2].to_string(), format!("{v:e}")]);
                json!({ "exponents": e, "value": v })
            })
            .collect();
        q_json.insert(name, Value::Array(terms));
    }
    let mut json = json!({ "degree": degree, "a": a_json, "q": q_json });
    if let Some(text) = s {
        let s = input::vector3(text)?;
        json["at"] = json!({
            "s": [c(s[0]), c(s[1]), c(s[2])],
            "A": (2..=4).map(|k| c(series.eval_a(k, s))).collect::<Vec<_>>(),
            "Q": (1..=3).map(|k| c(series.eval_q(k, s))).collect::<Vec<_>>(),
        });
    }
    Ok(plain(json, table))
}

/// Uniform in `[-1.5, 1.5]^2`.
pub fn box_point(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5))
}
