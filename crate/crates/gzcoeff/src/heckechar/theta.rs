use super::character::HeckeChar;
use super::complex::HpComplex;
use super::kelem::KElem;
use super::value::{AlgebraicValue, Embedding};
use crate::arith::isqrt;
use crate::error::{pre, Result};
use crate::hpfloat::{self, RM};
use crate::quadfield::{IdealRep, OkElem};
use astro_float::BigFloat;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::Value;

/// Coefficients c(1), ..., c(bound) of a q-series.
#[derive(Debug, Clone)]
pub struct CoeffSeries {
    pub bound: usize,
    pub values: Vec<AlgebraicValue>,
}

impl CoeffSeries {
    /// c(n) for 1 ≤ n ≤ bound.
    pub fn get(&self, n: usize) -> &AlgebraicValue {
        &self.values[n - 1]
    }

    pub fn to_json(&self, digits: usize) -> Value {
        Value::Array(self.values.iter().map(|v| v.to_json(digits)).collect())
    }
}

/// Per-class slice of Θ_χ: c(n) = r_{A,χ}(n).
pub fn theta_coeffs(ch: &HeckeChar, class: usize, bound: usize) -> Result<CoeffSeries> {
    if bound == 0 {
        return pre("bound must be at least 1");
    }
    let values = (1..=bound as i64).map(|n| ch.r_chi(class, n)).collect();
    Ok(CoeffSeries { bound, values })
}

/// Lattice points x = s·ω₁ + t·ω₂ of 𝔞 with Q_𝔞(x) = N(x)/N𝔞 ≤ bound, as (Q, x).
pub fn lattice_points(id: &IdealRep, bound: u64) -> Vec<(u64, OkElem)> {
    let a = id.a.to_i128().unwrap();
    let b = id.b.to_i128().unwrap();
    let d = id.d as i128;
    let c = (b * b - d) / (4 * a);
    let (w1, w2) = id.basis();
    let n = bound as i128;
    let tmax = isqrt((4 * a * n / -d) as u128) as i128 + 1;
    let mut out = Vec::new();
    for t in -tmax..=tmax {
        let disc = 4 * a * n + d * t * t;
        if disc < 0 {
            continue;
        }
        let r = isqrt(disc as u128) as i128 + 1;
        let lo = (b * t - r).div_euclid(2 * a);
        let hi = (b * t + r).div_euclid(2 * a) + 1;
        for s in lo..=hi {
            if s == 0 && t == 0 {
                continue;
            }
            let q = a * s * s - b * s * t + c * t * t;
            if q >= 1 && q <= n {
                let x = &w1.scale(&BigInt::from(s)) + &w2.scale(&BigInt::from(t));
                out.push((q as u64, x));
            }
        }
    }
    out
}

/// χ(𝔞̄)^(-1)·Σ_{x ∈ 𝔞} x̄^ℓ q^{Q_𝔞(x)}, by enumeration of lattice points.
pub fn lattice_theta_coeffs(ch: &HeckeChar, id: &IdealRep, bound: usize) -> Result<CoeffSeries> {
    if bound == 0 {
        return pre("bound must be at least 1");
    }
    let d = ch.disc().value();
    let mut sums = vec![OkElem::from_int(0, d); bound];
    for (q, x) in lattice_points(id, bound as u64) {
        let xb = x.conj().pow(ch.ell());
        sums[q as usize - 1] = &sums[q as usize - 1] + &xb;
    }
    let f = ch.chi_value(&id.conj()).inv()?;
    let values = sums.iter().map(|s| ch.embed(&KElem::from_ok(s)).mul(&f)).collect();
    Ok(CoeffSeries { bound, values })
}

/// Θ_A(φ) = χ(𝔞̄)^(-1)·Σ_{x ∈ 𝔞} φ(Q_𝔞(x) mod M) x̄^ℓ q^{Q_𝔞(x)} for the class
/// representative 𝔞, weighting each lattice point separately.
pub fn weighted_theta(
    ch: &HeckeChar,
    class: usize,
    phi: &dyn Fn(u64) -> AlgebraicValue,
    modulus: u64,
    bound: usize,
) -> Result<CoeffSeries> {
    if bound == 0 || modulus == 0 {
        return pre("bound and modulus must be positive");
    }
    let id = ch.group().representative(class);
    let mut values = vec![ch.embedding().zero(); bound];
    for (q, x) in lattice_points(&id, bound as u64) {
        let xb = ch.embed(&KElem::from_ok(&x.conj().pow(ch.ell())));
        let i = q as usize - 1;
        values[i] = values[i].add(&xb.mul(&phi(q % modulus)));
    }
    let f = ch.chi_value(&id.conj()).inv()?;
    let values = values.iter().map(|v| v.mul(&f)).collect();
    Ok(CoeffSeries { bound, values })
}

/// n ↦ exp(2πi·a·n/M) as a complex-mode value.
pub fn additive_character(emb: &Embedding, a: i64, modulus: u64) -> Result<impl Fn(u64) -> AlgebraicValue> {
    let Embedding::Complex { bits, .. } = emb else {
        return pre("additive characters need complex mode");
    };
    let bits = *bits;
    let two_pi = hpfloat::pi(bits).mul(&BigFloat::from_u32(2, bits), bits, RM);
    let table: Vec<HpComplex> = (0..modulus)
        .map(|r| {
            let k = (a as i128 * r as i128).rem_euclid(modulus as i128) as u64;
            let t = two_pi.mul(&BigFloat::from_u64(k, bits), bits, RM).div(&BigFloat::from_u64(modulus, bits), bits, RM);
            hpfloat::with_consts(|cc| HpComplex::new(t.cos(bits, RM, cc), t.sin(bits, RM, cc), bits))
        })
        .collect();
    Ok(move |n: u64| AlgebraicValue::Complex(table[(n % modulus) as usize].clone()))
}

/// Scale a series coefficientwise by a value depending on n (used for Θ_A(φ)
/// at the coefficient level).
pub fn twist_coefficients(s: &CoeffSeries, phi: &dyn Fn(u64) -> AlgebraicValue, modulus: u64) -> CoeffSeries {
    let values = s.values.iter().enumerate().map(|(i, v)| v.mul(&phi((i as u64 + 1) % modulus))).collect();
    CoeffSeries { bound: s.bound, values }
}

