use super::number::{p_pow, PadicNumber};
use crate::arith;
use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Smallest quadratic non-residue mod p.
pub fn nonresidue(p: u64) -> u64 {
    (2..p).find(|&a| arith::pow_mod(a, (p - 1) / 2, p) == p - 1).expect("odd prime")
}

/// √x in Z_p for x ≢ 0 a square mod p, the root ≡ `hint` mod p when given.
pub fn sqrt_zp(x: &PadicNumber, hint: Option<u64>) -> Result<PadicNumber> {
    let p = x.p();
    let v = x.valuation().ok_or_else(|| Error::NoRoot("square root of zero".into()))?;
    if v % 2 != 0 {
        return Err(Error::NoRoot(format!("odd valuation {v}")));
    }
    let u = x.unit().to_u64().map(|u| u % p).unwrap_or_else(|| (x.unit() % p).to_u64().unwrap());
    let r0 = match hint {
        Some(h) => h % p,
        None => arith::sqrt_mod_prime(u, p).ok_or_else(|| Error::NoRoot(format!("{u} is not a square mod {p}")))?,
    };
    if arith::mul_mod(r0, r0, p) != u {
        return Err(Error::NoRoot(format!("hint {r0} is not a square root of {u} mod {p}")));
    }
    let r = hensel(p, x.unit(), 2, r0, x.rel_prec());
    PadicNumber::from_parts(p, v / 2, r, x.rel_prec())
}

/// Newton iteration for r^d = u mod p^prec from r0 mod p; needs p ∤ d·r0.
pub(crate) fn hensel(p: u64, u: &BigUint, d: u32, r0: u64, prec: u32) -> BigUint {
    let m = p_pow(p, prec);
    let mut r = BigUint::from(r0) % &m;
    let db = BigUint::from(d);
    let u = u % &m;
    let mut k = 1u32;
    loop {
        // r <- r - (r^d - u)/(d r^{d-1})
        let rd1 = r.modpow(&BigUint::from(d - 1), &m);
        let rd = (&rd1 * &r) % &m;
        let f = (rd + &m - &u) % &m;
        if f.is_zero() {
            return r;
        }
        let den = (&db * &rd1) % &m;
        let inv = super::number::mod_inverse(&den, &m).expect("unit derivative");
        r = (&r + &m - (f * inv) % &m) % &m;
        if k > prec + 2 {
            return r;
        }
        k *= 2;
    }
}

/// Residues r in [1, p) with r^d ≡ u mod p, ascending.
fn roots_mod_p(u: u64, d: u32, p: u64) -> Result<Vec<u64>> {
    if p > 5_000_000 {
        if (d as u64).gcd(&(p - 1)) == 1 {
            let e = inv_mod(d as u64 % (p - 1), p - 1);
            return Ok(vec![arith::pow_mod(u, e, p)]);
        }
        return Err(Error::NoRoot(format!("root search mod {p} too large")));
    }
    Ok((1..p).filter(|&r| arith::pow_mod(r, d as u64, p) == u % p).collect())
}

fn inv_mod(a: u64, m: u64) -> u64 {
    let r = (a as i128).extended_gcd(&(m as i128));
    r.x.rem_euclid(m as i128) as u64
}

/// The d-th root of x in Z_p obtained by Hensel-lifting the smallest root mod p.
/// Errors when d does not divide the valuation, when p | d, or when no root
/// exists mod p. Returns (root, residue of the chosen root mod p).
pub fn nth_root_zp(x: &PadicNumber, d: u32) -> Result<(PadicNumber, u64)> {
    let p = x.p();
    let v = x.valuation().ok_or_else(|| Error::NoRoot("root of zero".into()))?;
    if v % d as i64 != 0 {
        return Err(Error::NoRoot(format!("valuation {v} not divisible by {d}")));
    }
    if d as u64 % p == 0 {
        return Err(Error::NoRoot(format!("p = {p} divides the root order {d}")));
    }
    let u = (x.unit() % p).to_u64().unwrap();
    let roots = roots_mod_p(u, d, p)?;
    let r0 = *roots.first().ok_or_else(|| Error::NoRoot(format!("{u} has no {d}-th root mod {p}")))?;
    let r = hensel(p, x.unit(), d, r0, x.rel_prec());
    Ok((PadicNumber::from_parts(p, v / d as i64, r, x.rel_prec())?, r0))
}

/// Does x have a d-th root in Z_p (same conditions as `nth_root_zp`)?
pub fn has_root_zp(x: &PadicNumber, d: u32) -> bool {
    nth_root_zp(x, d).is_ok()
}

/// Element re + im·√u of the unramified quadratic extension of Q_p, u the
/// smallest non-residue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadicQuad {
    pub re: PadicNumber,
    pub im: PadicNumber,
    pub u: u64,
}

impl PadicQuad {
    pub fn from_zp(x: PadicNumber) -> Self {
        let p = x.p();
        let prec = x.abs_prec().max(1);
        PadicQuad { im: PadicNumber::zero(p, prec), re: x, u: nonresidue(p) }
    }

    pub fn p(&self) -> u64 {
        self.re.p()
    }

    /// Is the √u component zero to working precision?
    pub fn in_zp(&self) -> bool {
        self.im.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        PadicQuad { re: self.re.add(&o.re), im: self.im.add(&o.im), u: self.u }
    }

    pub fn sub(&self, o: &Self) -> Self {
        PadicQuad { re: self.re.sub(&o.re), im: self.im.sub(&o.im), u: self.u }
    }

    pub fn neg(&self) -> Self {
        PadicQuad { re: self.re.neg(), im: self.im.neg(), u: self.u }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let re = self.re.mul(&o.re).add(&self.im.mul(&o.im).scale_int(self.u as i64));
        let im = self.re.mul(&o.im).add(&self.im.mul(&o.re));
        PadicQuad { re, im, u: self.u }
    }

    pub fn scale(&self, s: &PadicNumber) -> Self {
        PadicQuad { re: self.re.mul(s), im: self.im.mul(s), u: self.u }
    }

    pub fn conj(&self) -> Self {
        PadicQuad { re: self.re.clone(), im: self.im.neg(), u: self.u }
    }

    pub fn norm(&self) -> PadicNumber {
        self.re.mul(&self.re).sub(&self.im.mul(&self.im).scale_int(self.u as i64))
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        let ni = n.inv()?;
        Ok(self.conj().scale(&ni))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = PadicQuad::from_zp(PadicNumber::one(self.p(), self.re.rel_prec().max(self.im.rel_prec()).max(1)));
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Valuation of the difference, capped by known precision.
    pub fn diff_valuation(&self, o: &Self) -> i64 {
        self.re.diff_valuation(&o.re).min(self.im.diff_valuation(&o.im))
    }
}

/// d-th root in Z_p[√u] of an element of Z_p (unit after removing p^v),
/// Hensel-lifted from the first root mod p in lexicographic (re, im) order.
pub fn nth_root_quad(x: &PadicNumber, d: u32) -> Result<(PadicQuad, (u64, u64))> {
    let p = x.p();
    if p > 3000 {
        return Err(Error::NoRoot(format!("quadratic-extension root search mod {p} too large")));
    }
    let v = x.valuation().ok_or_else(|| Error::NoRoot("root of zero".into()))?;
    if v % d as i64 != 0 || d as u64 % p == 0 {
        return Err(Error::NoRoot(format!("valuation {v} or p | {d} blocks the root")));
    }
    let u = nonresidue(p);
    let target = (x.unit() % p).to_u64().unwrap();
    let fmul = |a: (u64, u64), b: (u64, u64)| {
        (
            (a.0 * b.0 + u * (a.1 * b.1 % p)) % p,
            (a.0 * b.1 + a.1 * b.0) % p,
        )
    };
    let fpow = |mut a: (u64, u64), mut e: u32| {
        let mut r = (1u64, 0u64);
        while e > 0 {
            if e & 1 == 1 {
                r = fmul(r, a);
            }
            a = fmul(a, a);
            e >>= 1;
        }
        r
    };
    let mut start = None;
    'search: for a in 0..p {
        for b in 0..p {
            if (a, b) != (0, 0) && fpow((a, b), d) == (target, 0) {
                start = Some((a, b));
                break 'search;
            }
        }
    }
    let (a0, b0) = start.ok_or_else(|| Error::NoRoot(format!("no {d}-th root mod {p} even in F_p²")))?;
    let prec = x.rel_prec();
    let num = |n: u64| PadicNumber::from_i64(n as i64, p, prec);
    let unit = PadicQuad::from_zp(PadicNumber::from_parts(p, 0, x.unit().clone(), prec)?);
    let mut r = PadicQuad { re: num(a0), im: num(b0), u };
    let dd = PadicQuad::from_zp(num(d as u64));
    for _ in 0..(2 * prec.max(2)).ilog2() + 2 {
        let rd1 = r.pow(d - 1);
        let f = rd1.mul(&r).sub(&unit);
        let step = f.mul(&dd.mul(&rd1).inv()?);
        r = r.sub(&step);
    }
    // restore p^(v/d)
    let pv = PadicNumber::from_parts(p, v / d as i64, BigUint::one(), prec)?;
    Ok((r.scale(&pv), (a0, b0)))
}
