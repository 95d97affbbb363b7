//! Helpers around `astro_float::BigFloat`: conversions from exact rationals,
//! π, and relative-error comparisons.

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use num_rational::BigRational;
use std::cell::RefCell;

pub const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constants"));
}

/// Run `f` with the thread's constant cache.
pub fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// Bits of precision for `digits` decimal digits plus a guard word, rounded
/// up to whole words (formatting misbehaves on partial words).
pub fn bits_for_digits(digits: u32) -> usize {
    let b = (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 64;
    b.div_ceil(64) * 64
}

pub fn from_bigint(n: &BigInt, p: usize) -> BigFloat {
    if let Ok(v) = i128::try_from(n) {
        return BigFloat::from_i128(v, p);
    }
    with_consts(|cc| BigFloat::parse(&n.to_string(), Radix::Dec, p, RM, cc))
}

pub fn from_rational(q: &BigRational, p: usize) -> BigFloat {
    from_bigint(q.numer(), p).div(&from_bigint(q.denom(), p), p, RM)
}

pub fn pi(p: usize) -> BigFloat {
    with_consts(|cc| cc.pi(p, RM))
}

/// Nearest f64 (used only for starting guesses).
pub fn to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let s = with_consts(|cc| x.format(Radix::Dec, RM, cc)).expect("format");
    s.parse::<f64>().unwrap_or(f64::NAN)
}

/// |a - b| / max(|a|, |b|), or |a - b| when both vanish.
pub fn rel_diff(a: &BigFloat, b: &BigFloat, p: usize) -> BigFloat {
    let diff = a.sub(b, p, RM).abs();
    let scale = if a.abs_cmp(b).unwrap_or(0) >= 0 { a.abs() } else { b.abs() };
    if scale.is_zero() {
        diff
    } else {
        diff.div(&scale, p, RM)
    }
}

/// 10^(-e) at precision p.
pub fn ten_pow_neg(e: u32, p: usize) -> BigFloat {
    BigFloat::from_u32(1, p).div(&BigFloat::from_u32(10, p).powi(e as usize, p, RM), p, RM)
}

/// x ≤ y.
pub fn le(x: &BigFloat, y: &BigFloat) -> bool {
    x.cmp(y).is_some_and(|c| c <= 0)
}

pub fn to_string_digits(x: &BigFloat, digits: usize) -> String {
    let s = with_consts(|cc| x.format(Radix::Dec, RM, cc)).expect("format");
    // trim mantissa to `digits` significant digits
    let (mant, exp) = match s.split_once('e') {
        Some((m, e)) => (m.to_string(), format!("e{e}")),
        None => (s.clone(), String::new()),
    };
    let neg = mant.starts_with('-');
    let body = mant.trim_start_matches('-');
    let mut out = String::new();
    let mut count = 0;
    for ch in body.chars() {
        if ch.is_ascii_digit() {
            if count >= digits {
                continue;
            }
            count += 1;
        }
        out.push(ch);
    }
    format!("{}{}{}", if neg { "-" } else { "" }, out.trim_end_matches('.'), exp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conversions() {
        let p = 256;
        let big: BigInt = BigInt::from(10).pow(50) + 7;
        let x = from_bigint(&big, p);
        let y = from_bigint(&(BigInt::from(10).pow(50)), p);
        let d = x.sub(&y, p, RM);
        assert_eq!(to_f64(&d), 7.0);
        let q = BigRational::new(1.into(), 3.into());
        assert!((to_f64(&from_rational(&q, p)) - 1.0 / 3.0).abs() < 1e-15);
        assert!((to_f64(&pi(p)) - std::f64::consts::PI).abs() < 1e-15);
    }
}
