//! Siegel modular forms of degree two from theta constants.
//!
//! `psi4 = 1/4 sum theta^8`, `psi6 = 1/4 sum_{syzygous} +-(theta theta theta)^4`,
//! `chi10 = -2^-14 prod theta^2`, `chi12 = 2^-17 3^-1 sum_{Gopel} prod_{complement} theta^4`
//! in Igusa's normalization (`psi4, psi6 -> 1` at the cusp).

use num_complex::Complex64;

use super::{theta_constants, ThetaCharacteristic};
use crate::error::{Error, Result};
use crate::numerics::Matrix2C;

/// Syzygous triples of even characteristics and the sign of their term in
/// `psi6`. The signs were obtained by propagating `+1` from the four cusp
/// triples along the theta transformation law of the generators of
/// `Sp4(Z)`; invariance is checked in the tests.
pub const SYZYGOUS_SIGNS: [([&str; 3], i8); 60] = [
    (["0000", "0001", "0010"], 1),
    (["0000", "0001", "0011"], 1),
    (["0000", "0001", "1000"], -1),
    (["0000", "0001", "1001"], -1),
    (["0000", "0010", "0011"], 1),
    (["0000", "0010", "0100"], -1),
    (["0000", "0010", "0110"], -1),
    (["0000", "0011", "1100"], -1),
    (["0000", "0011", "1111"], -1),
    (["0000", "0100", "0110"], -1),
    (["0000", "0100", "1000"], 1),
    (["0000", "0100", "1100"], 1),
    (["0000", "0110", "1001"], 1),
    (["0000", "0110", "1111"], 1),
    (["0000", "1000", "1001"], -1),
    (["0000", "1000", "1100"], 1),
    (["0000", "1001", "1111"], 1),
    (["0000", "1100", "1111"], -1),
    (["0001", "0010", "0011"], 1),
    (["0001", "0010", "1100"], 1),
    (["0001", "0010", "1111"], 1),
    (["0001", "0011", "0100"], 1),
    (["0001", "0011", "0110"], 1),
    (["0001", "0100", "0110"], -1),
    (["0001", "0100", "1001"], -1),
    (["0001", "0100", "1100"], 1),
    (["0001", "0110", "1000"], -1),
    (["0001", "0110", "1111"], 1),
    (["0001", "1000", "1001"], -1),
    (["0001", "1000", "1111"], -1),
    (["0001", "1001", "1100"], -1),
    (["0001", "1100", "1111"], -1),
    (["0010", "0011", "1000"], 1),
    (["0010", "0011", "1001"], 1),
    (["0010", "0100", "0110"], -1),
    (["0010", "0100", "1001"], -1),
    (["0010", "0100", "1111"], -1),
    (["0010", "0110", "1000"], -1),
    (["0010", "0110", "1100"], -1),
    (["0010", "1000", "1001"], -1),
    (["0010", "1000", "1100"], 1),
    (["0010", "1001", "1111"], 1),
    (["0010", "1100", "1111"], -1),
    (["0011", "0100", "0110"], -1),
    (["0011", "0100", "1000"], 1),
    (["0011", "0100", "1111"], -1),
    (["0011", "0110", "1001"], 1),
    (["0011", "0110", "1100"], -1),
    (["0011", "1000", "1001"], -1),
    (["0011", "1000", "1111"], -1),
    (["0011", "1001", "1100"], -1),
    (["0011", "1100", "1111"], -1),
    (["0100", "1000", "1100"], 1),
    (["0100", "1000", "1111"], 1),
    (["0100", "1001", "1100"], 1),
    (["0100", "1001", "1111"], 1),
    (["0110", "1000", "1100"], 1),
    (["0110", "1000", "1111"], 1),
    (["0110", "1001", "1100"], 1),
    (["0110", "1001", "1111"], 1),
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SiegelForms {
    pub psi4: Complex64,
    pub psi6: Complex64,
    pub chi10: Complex64,
    pub chi12: Complex64,
}

fn parse(label: &str) -> [u8; 4] {
    let b = label.as_bytes();
    [b[0] - b'0', b[1] - b'0', b[2] - b'0', b[3] - b'0']
}

fn index_of(bits: [u8; 4]) -> usize {
    ThetaCharacteristic::evens()
        .iter()
        .position(|c| c.bits() == Some(bits))
        .expect("even characteristic")
}

/// Index sets (into `ThetaCharacteristic::evens()`) of the 15 Gopel
/// quadruples: four even characteristics summing to zero.
pub fn gopel_quadruples() -> Vec<[usize; 4]> {
    let ev: Vec<[u8; 4]> = ThetaCharacteristic::evens().iter().map(|c| c.bits().unwrap()).collect();
    let mut out = Vec::new();
    for i in 0..10 {
        for j in i + 1..10 {
            for k in j + 1..10 {
                for l in k + 1..10 {
                    let s: Vec<u8> = (0..4).map(|b| ev[i][b] ^ ev[j][b] ^ ev[k][b] ^ ev[l][b]).collect();
                    if s.iter().all(|v| *v == 0) {
                        out.push([i, j, k, l]);
                    }
                }
            }
        }
    }
    out
}

/// Complements of the Gopel quadruples (six even characteristics each).
pub fn gopel_complements() -> Vec<[usize; 6]> {
    gopel_quadruples()
        .into_iter()
        .map(|q| {
            let rest: Vec<usize> = (0..10).filter(|k| !q.contains(k)).collect();
            [rest[0], rest[1], rest[2], rest[3], rest[4], rest[5]]
        })
        .collect()
}

/// The four generators from even theta constants listed in the order of
/// `ThetaCharacteristic::evens()`.
pub fn forms_from_constants(th: &[Complex64]) -> SiegelForms {
    let t4: Vec<Complex64> = th.iter().map(|t| t.powu(4)).collect();
    let psi4 = t4.iter().map(|v| v * v).sum::<Complex64>() / 4.0;
    let psi6 = SYZYGOUS_SIGNS
        .iter()
        .map(|(labels, s)| {
            let p: Complex64 = labels.iter().map(|l| t4[index_of(parse(l))]).product();
            p * *s as f64
        })
        .sum::<Complex64>()
        / 4.0;
    let chi10 = -th.iter().map(|t| t * t).product::<Complex64>() / 2f64.powi(14);
    let chi12 = gopel_complements()
        .iter()
        .map(|c| c.iter().map(|k| t4[*k]).product::<Complex64>())
        .sum::<Complex64>()
        / (2f64.powi(17) * 3.0);
    SiegelForms { psi4, psi6, chi10, chi12 }
}

pub fn cusp_forms(tau: &Matrix2C) -> Result<SiegelForms> {
    let th: Vec<Complex64> = theta_constants(tau)?.into_iter().map(|(_, v)| v).collect();
    Ok(forms_from_constants(&th))
}

/// `(psi4 chi10^2/chi12^2, psi6 chi10^3/chi12^3, chi10^6/chi12^5)`.
pub fn igusa_from_tau(tau: &Matrix2C) -> Result<[Complex64; 3]> {
    let f = cusp_forms(tau)?;
    if f.chi12.norm() == 0.0 {
        return Err(Error::DenominatorVanishes);
    }
    let r = f.chi10 / f.chi12;
    Ok([f.psi4 * r * r, f.psi6 * r * r * r, r.powu(5) * f.chi10])
}

/// Rosenhain parameters as squares of theta-constant ratios.
pub fn rosenhain_lambdas(tau: &Matrix2C) -> Result<[Complex64; 3]> {
    let t = |l: &str| -> Result<Complex64> { super::theta_constant(parse(l), tau) };
    let (t1100, t1000, t0100, t0000) = (t("1100")?, t("1000")?, t("0100")?, t("0000")?);
    let (t1001, t0001) = (t("1001")?, t("0001")?);
    let scale = [t1100, t1000, t0100, t0000, t1001, t0001].iter().map(|v| v.norm()).fold(0.0, f64::max);
    for d in [t0100, t0000, t0001] {
        if d.norm() < 1e-12 * scale {
            return Err(Error::DenominatorVanishes);
        }
    }
    Ok([
        (t1100 * t1000 / (t0100 * t0000)).powu(2),
        (t1001 * t1100 / (t0001 * t0100)).powu(2),
        (t1001 * t1000 / (t0001 * t0000)).powu(2),
    ])
}
