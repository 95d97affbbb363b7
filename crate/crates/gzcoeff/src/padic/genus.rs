use super::log::iwasawa_log;
use super::number::PadicNumber;
use crate::arith::{self, kronecker};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use std::collections::BTreeMap;

/// Split D = D₁·D₂ with |D₂| = g, D₂ a discriminant (≡ 1 mod 4).
pub fn genus_split(d: i64, g: u64) -> Result<(i64, i64)> {
    let g = g as i64;
    if g == 0 || d % g != 0 {
        return Err(Error::Precondition(format!("{g} does not divide {d}")));
    }
    let d2 = if g.rem_euclid(4) == 1 { g } else { -g };
    let d1 = d / d2;
    if d1.rem_euclid(4) != 1 || d1.gcd(&d2) != 1 {
        return Err(Error::Precondition(format!("{d} = {d1}·{d2} is not a discriminant factorisation")));
    }
    Ok((d1, d2))
}

/// ε_A(n, d) = (D₁/d)(D₂/(-nN/d))(D₂/N(A)) with |D₂| = gcd(d, |D|), and 0 when
/// gcd(d, n/d, |D|) > 1.
pub fn epsilon_a(d: i64, level: u64, class_norm: u64, n: u64, dd: u64) -> Result<i8> {
    if dd == 0 || n % dd != 0 {
        return Err(Error::Precondition(format!("{dd} does not divide {n}")));
    }
    let ad = d.unsigned_abs();
    if dd.gcd(&(n / dd)).gcd(&ad) > 1 {
        return Ok(0);
    }
    let (d1, d2) = genus_split(d, dd.gcd(&ad))?;
    let top = -((n / dd) as i128) * level as i128;
    let s1 = kronecker(d1, dd as i64);
    let s2 = arith::kronecker_i128(d2 as i128, top);
    let s3 = kronecker(d2, class_norm as i64);
    Ok(s1 * s2 * s3)
}

/// σ_A(n) = Σ_{d|n} ε_A(n, d) log_p(n/d²), each log computed separately.
pub fn sigma_a_direct(d: i64, level: u64, class_norm: u64, n: u64, p: u64, prec: u32) -> Result<PadicNumber> {
    let mut acc = PadicNumber::zero(p, prec as i64);
    for dd in arith::divisors(n) {
        let e = epsilon_a(d, level, class_norm, n, dd)?;
        if e == 0 {
            continue;
        }
        let arg = BigRational::new(BigInt::from(n), BigInt::from(dd) * BigInt::from(dd));
        let l = iwasawa_log(p, &arg, prec)?;
        acc = acc.add(&l.scale_int(e as i64));
    }
    Ok(acc.with_abs_prec(prec as i64))
}

/// Integer coefficients c_q with σ_A(n) = Σ_q c_q·log_p(q).
pub fn sigma_log_coefficients(d: i64, level: u64, class_norm: u64, n: u64) -> Result<BTreeMap<u64, i64>> {
    let fac = arith::factor(n);
    let mut coef: BTreeMap<u64, i64> = fac.iter().map(|&(q, _)| (q, 0)).collect();
    for dd in arith::divisors(n) {
        let e = epsilon_a(d, level, class_norm, n, dd)? as i64;
        if e == 0 {
            continue;
        }
        for &(q, en) in &fac {
            let vd = arith::val_p(dd, q) as i64;
            *coef.get_mut(&q).unwrap() += e * (en as i64 - 2 * vd);
        }
    }
    coef.retain(|_, c| *c != 0);
    Ok(coef)
}

/// σ_A(n) via log additivity: Σ_q c_q log_p(q).
pub fn sigma_a(d: i64, level: u64, class_norm: u64, n: u64, p: u64, prec: u32) -> Result<PadicNumber> {
    if n == 0 {
        return Err(Error::Precondition("σ_A(0) is undefined".into()));
    }
    let mut acc = PadicNumber::zero(p, prec as i64);
    for (q, c) in sigma_log_coefficients(d, level, class_norm, n)? {
        if q == p {
            continue;
        }
        let l = iwasawa_log(p, &BigRational::from_integer(BigInt::from(q)), prec)?;
        acc = acc.add(&l.scale_int(c));
    }
    Ok(acc.with_abs_prec(prec as i64))
}
