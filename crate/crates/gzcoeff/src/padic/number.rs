use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// A p-adic number p^val·unit known to `prec` significant digits.
///
/// A zero is stored with an empty unit and `val` equal to its absolute
/// precision: it stands for O(p^val).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PadicNumber {
    p: u64,
    val: i64,
    unit: BigUint,
    prec: u32,
}

pub fn p_pow(p: u64, e: u32) -> BigUint {
    BigUint::from(p).pow(e)
}

/// Split off the p-part of a nonzero integer: (v, n/p^v).
pub fn split_p(n: &BigUint, p: u64) -> (u32, BigUint) {
    let pb = BigUint::from(p);
    let mut v = 0;
    let mut n = n.clone();
    loop {
        let (q, r) = n.div_rem(&pb);
        if !r.is_zero() {
            return (v, n);
        }
        n = q;
        v += 1;
    }
}

pub fn mod_inverse(a: &BigUint, m: &BigUint) -> Option<BigUint> {
    if m.is_one() {
        return Some(BigUint::zero());
    }
    let r = BigInt::from(a.clone()).extended_gcd(&BigInt::from(m.clone()));
    if !r.gcd.is_one() {
        return None;
    }
    r.x.mod_floor(&BigInt::from(m.clone())).to_biguint()
}

fn signed_mod(n: &BigInt, m: &BigUint) -> BigUint {
    n.mod_floor(&BigInt::from(m.clone())).to_biguint().unwrap()
}

impl PadicNumber {
    /// O(p^abs_prec).
    pub fn zero(p: u64, abs_prec: i64) -> Self {
        PadicNumber { p, val: abs_prec, unit: BigUint::zero(), prec: 0 }
    }

    pub fn one(p: u64, prec: u32) -> Self {
        Self::from_int(&BigInt::one(), p, prec)
    }

    /// p^val·unit with unit taken mod p^prec; unit must be prime to p.
    pub fn from_parts(p: u64, val: i64, unit: BigUint, prec: u32) -> Result<Self> {
        if prec == 0 {
            return Ok(Self::zero(p, val));
        }
        let unit = unit % p_pow(p, prec);
        if (&unit % p).is_zero() {
            return Err(Error::Precondition(format!("unit {unit} divisible by p = {p}")));
        }
        Ok(PadicNumber { p, val, unit, prec })
    }

    /// An integer to `prec` significant digits (a zero gets absolute precision `prec`).
    pub fn from_int(n: &BigInt, p: u64, prec: u32) -> Self {
        if n.is_zero() {
            return Self::zero(p, prec as i64);
        }
        let (v, u) = split_p(n.magnitude(), p);
        let m = p_pow(p, prec);
        let u = if n.sign() == Sign::Minus { signed_mod(&-BigInt::from(u), &m) } else { u % &m };
        PadicNumber { p, val: v as i64, unit: u, prec }
    }

    pub fn from_i64(n: i64, p: u64, prec: u32) -> Self {
        Self::from_int(&BigInt::from(n), p, prec)
    }

    pub fn from_rational(q: &BigRational, p: u64, prec: u32) -> Self {
        if q.is_zero() {
            return Self::zero(p, prec as i64);
        }
        let (vn, un) = split_p(q.numer().magnitude(), p);
        let (vd, ud) = split_p(q.denom().magnitude(), p);
        let m = p_pow(p, prec);
        let inv = mod_inverse(&(ud % &m), &m).expect("unit denominator");
        let mut u = (un % &m) * inv % &m;
        if q.is_negative() {
            u = (&m - u) % &m;
        }
        PadicNumber { p, val: vn as i64 - vd as i64, unit: u, prec }
    }

    /// The residue r mod p^abs as a number with absolute precision `abs`.
    pub fn from_residue(r: &BigUint, p: u64, abs: u32) -> Self {
        let r = r % p_pow(p, abs);
        if r.is_zero() {
            return Self::zero(p, abs as i64);
        }
        let (v, u) = split_p(&r, p);
        PadicNumber { p, val: v as i64, unit: u, prec: abs - v }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.prec == 0
    }

    /// Valuation, None for a zero.
    pub fn valuation(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.val)
        }
    }

    /// Lower bound on the valuation (the absolute precision for a zero).
    pub fn val_lower(&self) -> i64 {
        self.val
    }

    pub fn unit(&self) -> &BigUint {
        &self.unit
    }

    /// Relative precision (0 for a zero).
    pub fn rel_prec(&self) -> u32 {
        self.prec
    }

    /// The value is known modulo p^abs_prec.
    pub fn abs_prec(&self) -> i64 {
        self.val + self.prec as i64
    }

    fn same_p(&self, o: &Self) {
        assert_eq!(self.p, o.p, "p-adic numbers with different p");
    }

    /// Truncate to absolute precision n (never increases precision).
    pub fn with_abs_prec(&self, n: i64) -> Self {
        if n >= self.abs_prec() {
            return self.clone();
        }
        if self.is_zero() || n <= self.val {
            return Self::zero(self.p, n.min(self.val));
        }
        let prec = (n - self.val) as u32;
        PadicNumber { p: self.p, val: self.val, unit: &self.unit % p_pow(self.p, prec), prec }
    }

    pub fn neg(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let m = p_pow(self.p, self.prec);
        PadicNumber { unit: (&m - &self.unit) % &m, ..self.clone() }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.same_p(o);
        let abs = self.abs_prec().min(o.abs_prec());
        if self.is_zero() {
            return o.with_abs_prec(abs);
        }
        if o.is_zero() {
            return self.with_abs_prec(abs);
        }
        let v = self.val.min(o.val);
        if abs <= v {
            return Self::zero(self.p, abs);
        }
        let rel = (abs - v) as u32;
        let m = p_pow(self.p, rel);
        let lift = |x: &Self| &x.unit * p_pow(x.p, (x.val - v) as u32);
        let s = (lift(self) + lift(o)) % &m;
        if s.is_zero() {
            return Self::zero(self.p, abs);
        }
        let (t, u) = split_p(&s, self.p);
        PadicNumber { p: self.p, val: v + t as i64, unit: u, prec: rel - t }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.same_p(o);
        match (self.is_zero(), o.is_zero()) {
            (true, true) => Self::zero(self.p, self.val + o.val),
            (true, false) => Self::zero(self.p, self.val + o.val),
            (false, true) => Self::zero(self.p, self.val + o.val),
            (false, false) => {
                let prec = self.prec.min(o.prec);
                let m = p_pow(self.p, prec);
                PadicNumber { p: self.p, val: self.val + o.val, unit: (&self.unit * &o.unit) % m, prec }
            }
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let m = p_pow(self.p, self.prec);
        let u = mod_inverse(&self.unit, &m).expect("unit");
        Ok(PadicNumber { p: self.p, val: -self.val, unit: u, prec: self.prec })
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: u32) -> Self {
        if e == 0 {
            return Self::one(self.p, self.prec.max(1).max(if self.is_zero() { self.val.max(1) as u32 } else { 0 }));
        }
        if self.is_zero() {
            return Self::zero(self.p, self.val * e as i64);
        }
        let m = p_pow(self.p, self.prec);
        PadicNumber { p: self.p, val: self.val * e as i64, unit: self.unit.modpow(&BigUint::from(e), &m), prec: self.prec }
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.mul(&Self::from_i64(n, self.p, self.prec.max(1)))
    }

    /// Valuation of self - o, capped by the precision to which it is known.
    pub fn diff_valuation(&self, o: &Self) -> i64 {
        self.sub(o).val
    }

    /// Residue mod p^n as an integer in [0, p^n); needs nonnegative valuation
    /// and absolute precision ≥ n.
    pub fn residue(&self, n: u32) -> Result<BigUint> {
        if self.abs_prec() < n as i64 {
            return Err(Error::Precision(format!("need {} digits, have {}", n, self.abs_prec())));
        }
        if self.is_zero() || self.val >= n as i64 {
            return Ok(BigUint::zero());
        }
        if self.val < 0 {
            return Err(Error::Precondition("negative valuation has no residue".into()));
        }
        Ok((&self.unit * p_pow(self.p, self.val as u32)) % p_pow(self.p, n))
    }

    /// Signed representative in (-p^n/2, p^n/2].
    pub fn signed_residue(&self, n: u32) -> Result<BigInt> {
        let r = BigInt::from(self.residue(n)?);
        let m = BigInt::from(p_pow(self.p, n));
        Ok(if &r * 2 > m { r - m } else { r })
    }

    /// Unit digits base p, little-endian, `prec` of them.
    pub fn digits(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.prec as usize);
        let mut u = self.unit.clone();
        let pb = BigUint::from(self.p);
        for _ in 0..self.prec {
            let (q, r) = u.div_rem(&pb);
            out.push(r.to_u64().unwrap());
            u = q;
        }
        out
    }

    pub fn to_json(&self) -> PadicJson {
        PadicJson { p: self.p, val: self.val, unit: self.digits(), prec: self.prec }
    }

    pub fn from_json(j: &PadicJson) -> Result<Self> {
        let mut u = BigUint::zero();
        for &dg in j.unit.iter().rev() {
            if dg >= j.p {
                return Err(Error::Precondition(format!("digit {dg} ≥ p")));
            }
            u = u * j.p + dg;
        }
        if j.unit.len() != j.prec as usize {
            return Err(Error::Precondition("digit count differs from prec".into()));
        }
        Self::from_parts(j.p, j.val, u, j.prec)
    }
}

impl std::fmt::Display for PadicNumber {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            write!(f, "O({}^{})", self.p, self.val)
        } else {
            write!(f, "{}^{}·{} + O({}^{})", self.p, self.val, self.unit, self.p, self.abs_prec())
        }
    }
}

/// Serialised form: {"p", "val", "unit": base-p digits little-endian, "prec"}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PadicJson {
    pub p: u64,
    pub val: i64,
    pub unit: Vec<u64>,
    pub prec: u32,
}

impl Serialize for PadicNumber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}
