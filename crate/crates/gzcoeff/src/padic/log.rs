use super::number::{mod_inverse, p_pow, split_p, PadicNumber};
use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Teichmüller lift ω(x): the (p-1)-st root of unity ≡ x mod p, to precision n.
pub fn teichmuller(p: u64, x: &BigInt, n: u32) -> Result<PadicNumber> {
    if (x % BigInt::from(p)).is_zero() {
        return Err(Error::Precondition(format!("teichmuller: {p} divides {x}")));
    }
    let m = p_pow(p, n);
    let w = teichmuller_residue(p, &x.mod_floor(&BigInt::from(m.clone())).to_biguint().unwrap(), n);
    Ok(PadicNumber::from_parts(p, 0, w, n).expect("unit"))
}

/// ω(x) mod p^n by iterating x ↦ x^p until it stabilises.
pub fn teichmuller_residue(p: u64, x: &BigUint, n: u32) -> BigUint {
    let m = p_pow(p, n);
    let pb = BigUint::from(p);
    let mut w = x % &m;
    loop {
        let next = w.modpow(&pb, &m);
        if next == w {
            return w;
        }
        w = next;
    }
}

/// Number of series terms used for log on 1 + pZ_p at absolute precision n.
pub fn log_terms(p: u64, n: u32) -> u32 {
    let extra = ((n.max(1) as f64).ln() / (p as f64).ln()).ceil() as u32;
    n + extra + 2
}

/// Σ_{j=1}^{T} (-1)^{j+1} y^j / j mod p^n, for y ≡ 0 mod p given mod p^n_work.
fn log_series(p: u64, y: &BigUint, n: u32) -> BigUint {
    let terms = log_terms(p, n);
    let mut extra = 0;
    let mut t = terms as u64;
    while t >= p {
        t /= p;
        extra += 1;
    }
    let work = n + extra;
    let mw = p_pow(p, work);
    let mn = p_pow(p, n);
    let y = y % &mw;
    let mut pw = BigUint::one();
    let mut acc = BigUint::zero();
    for j in 1..=terms as u64 {
        pw = (&pw * &y) % &mw;
        let (v, jj) = split_p(&BigUint::from(j), p);
        // y^j is divisible by p^j ≥ p^v, so the quotient is exact
        let q = (&pw / p_pow(p, v)) % &mn;
        let inv = mod_inverse(&(jj % &mn), &mn).expect("unit");
        let term = q * inv % &mn;
        if j % 2 == 1 {
            acc = (acc + term) % &mn;
        } else {
            acc = (acc + &mn - term) % &mn;
        }
    }
    acc
}

/// Iwasawa logarithm of a nonzero rational, to absolute precision n:
/// log(p) = 0, log(ω(u)) = 0, and the power series on ⟨x⟩ = x·ω(x)^{-1}.
pub fn iwasawa_log(p: u64, x: &BigRational, n: u32) -> Result<PadicNumber> {
    if x.is_zero() {
        return Err(Error::Precondition("log of zero".into()));
    }
    let m = p_pow(p, n + 1);
    let (_, un) = split_p(x.numer().magnitude(), p);
    let (_, ud) = split_p(x.denom().magnitude(), p);
    let mut u = (un % &m) * mod_inverse(&(ud % &m), &m).expect("unit") % &m;
    if x.is_negative() {
        u = (&m - u) % &m;
    }
    let w = teichmuller_residue(p, &u, n + 1);
    let winv = mod_inverse(&w, &m).expect("unit");
    let y = (u * winv + &m - BigUint::one()) % &m;
    Ok(PadicNumber::from_residue(&log_series(p, &y, n), p, n))
}

pub fn iwasawa_log_int(p: u64, x: i64, n: u32) -> Result<PadicNumber> {
    iwasawa_log(p, &BigRational::from_integer(BigInt::from(x)), n)
}

/// The same logarithm through log(x) = log(x^{p-1})/(p-1), avoiding ω.
pub fn iwasawa_log_via_power(p: u64, x: &BigRational, n: u32) -> Result<PadicNumber> {
    if x.is_zero() {
        return Err(Error::Precondition("log of zero".into()));
    }
    let m = p_pow(p, n + 1);
    let (_, un) = split_p(x.numer().magnitude(), p);
    let (_, ud) = split_p(x.denom().magnitude(), p);
    let u = (un % &m) * mod_inverse(&(ud % &m), &m).expect("unit") % &m;
    // sign is irrelevant: (-1)^{p-1} = 1
    let up = u.modpow(&BigUint::from(p - 1), &m);
    let y = (up + &m - BigUint::one()) % &m;
    let l = log_series(p, &y, n);
    let mn = p_pow(p, n);
    let inv = mod_inverse(&BigUint::from(p - 1), &mn).unwrap();
    Ok(PadicNumber::from_residue(&(l * inv % &mn), p, n))
}
