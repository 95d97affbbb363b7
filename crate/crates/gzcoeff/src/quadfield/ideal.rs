use super::disc::Discriminant;
use super::element::OkElem;
use super::form::QuadForm;
use crate::arith;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// The integral ideal scale·(aZ + ((-b + √D)/2)Z), with b normalised to (-a, a].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IdealRep {
    pub scale: BigInt,
    pub a: BigInt,
    pub b: BigInt,
    pub d: i64,
}

/// Decomposition of a rational prime in K.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SplitType {
    Split(IdealRep, IdealRep),
    Inert,
    Ramified(IdealRep),
}

impl SplitType {
    pub fn name(&self) -> &'static str {
        match self {
            SplitType::Split(..) => "split",
            SplitType::Inert => "inert",
            SplitType::Ramified(_) => "ramified",
        }
    }
}

fn normalize_b(b: BigInt, a: &BigInt) -> BigInt {
    let two_a = a * 2;
    let mut b = b.mod_floor(&two_a);
    if &b > a {
        b -= two_a;
    }
    b
}

impl IdealRep {
    /// The primitive ideal aZ + ((-b + √D)/2)Z; requires b² = D mod 4a.
    pub fn new(d: Discriminant, a: impl Into<BigInt>, b: impl Into<BigInt>) -> Result<Self> {
        let (a, b) = (a.into(), b.into());
        if !a.is_positive() {
            return Err(Error::Precondition(format!("ideal norm {a} must be positive")));
        }
        let dd = d.big();
        let num: BigInt = &b * &b - &dd;
        let four_a: BigInt = &a * 4;
        if !(num % four_a).is_zero() {
            return Err(Error::Precondition(format!("b² ≢ D mod 4a (a={a}, b={b})")));
        }
        let b = normalize_b(b, &a);
        Ok(IdealRep { scale: BigInt::one(), a, b, d: d.value() })
    }

    pub fn unit(d: Discriminant) -> Self {
        IdealRep { scale: BigInt::one(), a: BigInt::one(), b: BigInt::one(), d: d.value() }
    }

    /// The ideal generated by a rational integer.
    pub fn rational(d: Discriminant, n: impl Into<BigInt>) -> Self {
        let mut id = Self::unit(d);
        id.scale = n.into().abs();
        id
    }

    pub fn from_form(f: &QuadForm) -> Self {
        let d = f.disc_i64();
        IdealRep { scale: BigInt::one(), a: f.a.clone(), b: normalize_b(f.b.clone(), &f.a), d }
    }

    pub fn with_scale(mut self, s: impl Into<BigInt>) -> Self {
        self.scale *= s.into();
        self
    }

    pub fn norm(&self) -> BigInt {
        &self.scale * &self.scale * &self.a
    }

    pub fn norm_u64(&self) -> u64 {
        self.norm().to_u64().expect("norm fits u64")
    }

    /// Form attached to the primitive part.
    pub fn form(&self) -> QuadForm {
        QuadForm::from_ab(&self.a, &self.b, self.d).expect("valid ideal")
    }

    /// Z-basis (ω₁, ω₂) = scale·(a, (-b + √D)/2).
    pub fn basis(&self) -> (OkElem, OkElem) {
        let s = &self.scale;
        (OkElem::new(&self.a * s * 2, 0, self.d), OkElem::new(-&self.b * s, s.clone(), self.d))
    }

    pub fn conj(&self) -> Self {
        IdealRep {
            scale: self.scale.clone(),
            a: self.a.clone(),
            b: normalize_b(-&self.b, &self.a),
            d: self.d,
        }
    }

    /// The ideal (as a lattice) spanned by the given elements, which must
    /// generate an O_K-ideal.
    pub fn from_generators(d: i64, gens: &[OkElem]) -> Result<Self> {
        // coordinates in the basis (1, ω): (x + y√D)/2 = (x - y)/2 + yω
        let mut rows: Vec<(BigInt, BigInt)> =
            gens.iter().map(|g| ((&g.x - &g.y) / 2, g.y.clone())).collect();
        // Euclid on the ω-coordinate
        loop {
            rows.retain(|(u, v)| !(u.is_zero() && v.is_zero()));
            let nz: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i].1.is_zero()).collect();
            if nz.len() <= 1 {
                break;
            }
            let piv = *nz.iter().min_by_key(|&&i| rows[i].1.abs()).unwrap();
            let (pu, pv) = rows[piv].clone();
            for &i in &nz {
                if i != piv {
                    let q = rows[i].1.div_floor(&pv);
                    rows[i].0 -= &q * &pu;
                    rows[i].1 -= &q * &pv;
                }
            }
        }
        let mut c = BigInt::zero();
        let mut b0 = BigInt::zero();
        let mut a_full = BigInt::zero();
        for (u, v) in &rows {
            if v.is_zero() {
                a_full = a_full.gcd(u);
            } else {
                c = v.clone();
                b0 = u.clone();
            }
        }
        if c.is_negative() {
            c = -c;
            b0 = -b0;
        }
        if c.is_zero() || a_full.is_zero() {
            return Err(Error::Precondition("generators do not span a full lattice".into()));
        }
        let b0 = b0.mod_floor(&a_full);
        if !(&a_full % &c).is_zero() || !(&b0 % &c).is_zero() {
            return Err(Error::Precondition("lattice is not an ideal".into()));
        }
        let a: BigInt = &a_full / &c;
        let half: BigInt = &b0 / &c;
        let b: BigInt = -(half * BigInt::from(2) + BigInt::one());
        let dd = Discriminant::new(d)?;
        Ok(IdealRep::new(dd, a, b)?.with_scale(c))
    }

    pub fn mul(&self, other: &IdealRep) -> Result<IdealRep> {
        if self.d != other.d {
            return Err(Error::DiscriminantMismatch(self.d.to_string(), other.d.to_string()));
        }
        let (x1, x2) = self.basis();
        let (y1, y2) = other.basis();
        IdealRep::from_generators(self.d, &[&x1 * &y1, &x1 * &y2, &x2 * &y1, &x2 * &y2])
    }

    pub fn pow(&self, e: u32) -> Result<IdealRep> {
        let mut acc = IdealRep::unit(Discriminant::new(self.d)?);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Membership test for an element of O_K.
    pub fn contains(&self, x: &OkElem) -> bool {
        // x = s·(a·u + v·(-b + √D)/2): solve for v from the √D part, then u.
        let s2 = &self.scale * 2;
        if !(&x.y % &self.scale).is_zero() {
            return false;
        }
        let v = &x.y / &self.scale;
        let rest: BigInt = &x.x + &self.b * &self.scale * &v; // = 2·s·a·u
        let den: BigInt = &s2 * &self.a;
        (&rest % &den).is_zero()
    }
}

impl std::fmt::Display for IdealRep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.scale.is_one() {
            write!(f, "[{}, ({} + √{})/2]", self.a, -&self.b, self.d)
        } else {
            write!(f, "{}·[{}, ({} + √{})/2]", self.scale, self.a, -&self.b, self.d)
        }
    }
}

fn sqrt_mod_prime_power(d: i64, q: u64, e: u32) -> u128 {
    let m = (q as u128).pow(e);
    let dm = (d as i128).rem_euclid(m as i128) as u128;
    let mut x = arith::sqrt_mod_prime(dm as u64 % q, q).expect("residue") as u128;
    let mut mk = q as u128;
    for _ in 1..e {
        mk *= q as u128;
        // Newton step x <- x - (x² - d)/(2x) mod q^k
        let f = (x * x % mk + mk - dm % mk) % mk;
        let inv = modinv((2 * x) % mk, mk);
        x = (x + mk - f * inv % mk) % mk;
    }
    x % m
}

fn modinv(a: u128, m: u128) -> u128 {
    let r = BigInt::from(a).extended_gcd(&BigInt::from(m));
    assert!(r.gcd.is_one(), "not invertible");
    r.x.mod_floor(&BigInt::from(m)).to_u128().unwrap()
}

fn crt(conds: &[(u128, u128)]) -> (u128, u128) {
    let mut r = 0u128;
    let mut m = 1u128;
    for &(ri, mi) in conds {
        // r + m·t ≡ ri mod mi
        let inv = modinv(m % mi, mi);
        let t = ((ri + mi - r % mi) % mi) * inv % mi;
        r += m * t;
        m *= mi;
        r %= m;
    }
    (r, m)
}

/// All primitive ideals of norm n, as (a, b) pairs sorted by b.
pub fn primitive_ideals_of_norm(d: Discriminant, n: u64) -> Vec<IdealRep> {
    if n == 1 {
        return vec![IdealRep::unit(d)];
    }
    let dv = d.value();
    let mut local: Vec<Vec<(u128, u128)>> = Vec::new();
    let mut has_two = false;
    for (q, e) in arith::factor(n) {
        if q == 2 {
            has_two = true;
            if dv.rem_euclid(8) != 1 {
                return Vec::new();
            }
            let m2 = 1u128 << (e + 1);
            let m4 = 1u128 << (e + 2);
            let dm = (dv as i128).rem_euclid(m4 as i128) as u128;
            let sols: Vec<(u128, u128)> =
                (0..m2).filter(|&b| b % 2 == 1 && (b * b) % m4 == dm).map(|b| (b, m2)).collect();
            local.push(sols);
            continue;
        }
        match arith::kronecker(dv, q as i64) {
            1 => {
                let x = sqrt_mod_prime_power(dv, q, e);
                let m = (q as u128).pow(e);
                local.push(vec![(x, m), ((m - x) % m, m)]);
            }
            0 if e == 1 => local.push(vec![(0, q as u128)]),
            _ => return Vec::new(),
        }
    }
    if !has_two {
        local.push(vec![(1, 2)]);
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; local.len()];
    loop {
        let conds: Vec<(u128, u128)> = idx.iter().zip(&local).map(|(&i, l)| l[i]).collect();
        let (b, _) = crt(&conds);
        out.push(IdealRep::new(d, n, b as i128).expect("crt root"));
        let mut j = 0;
        while j < idx.len() {
            idx[j] += 1;
            if idx[j] < local[j].len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
        if j == idx.len() {
            break;
        }
    }
    out.sort();
    out.dedup();
    out
}

/// All integral ideals of norm n, scaled primitive ideals included.
pub fn all_ideals_of_norm(d: Discriminant, n: u64) -> Vec<IdealRep> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut e = 1u64;
    while e * e <= n {
        if n % (e * e) == 0 {
            for id in primitive_ideals_of_norm(d, n / (e * e)) {
                out.push(id.with_scale(e));
            }
        }
        e += 1;
    }
    out
}

/// Splitting behaviour of the prime q, with the prime ideals above it.
pub fn split_type(d: Discriminant, q: u64) -> Result<SplitType> {
    if !arith::is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    let ids = primitive_ideals_of_norm(d, q);
    Ok(match arith::kronecker(d.value(), q as i64) {
        1 => {
            // order so that the first has b > 0
            let (x, y) = (ids[0].clone(), ids[1].clone());
            if x.b.is_positive() {
                SplitType::Split(x, y)
            } else {
                SplitType::Split(y, x)
            }
        }
        0 => SplitType::Ramified(ids[0].clone()),
        _ => SplitType::Inert,
    })
}

/// The ideal of norm |D₁| for a coprime discriminant factorisation D = D₁D₂.
pub fn ramified_ideal(d: Discriminant, d1: i64) -> Result<IdealRep> {
    let dv = d.value();
    if d1 == 0 || dv % d1 != 0 || d1.rem_euclid(4) != 1 {
        return Err(Error::Precondition(format!("{d1} is not a discriminant factor of {dv}")));
    }
    let d2 = dv / d1;
    if d2.rem_euclid(4) != 1 || d1.gcd(&d2) != 1 {
        return Err(Error::Precondition(format!("{d1}·{d2} is not a coprime discriminant factorisation")));
    }
    let a = d1.unsigned_abs();
    IdealRep::new(d, a, a as i64)
}

/// Coprime discriminant factorisations D = D₁·D₂, listed by D₁.
pub fn discriminant_factors(d: Discriminant) -> Vec<(i64, i64)> {
    let primes: Vec<u64> = arith::factor(d.abs()).into_iter().map(|(q, _)| q).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << primes.len()) {
        let mut d1: i64 = 1;
        for (i, &q) in primes.iter().enumerate() {
            if mask >> i & 1 == 1 {
                d1 *= q as i64;
            }
        }
        // prime discriminants: q* = ±q with q* = 1 mod 4
        if d1.rem_euclid(4) != 1 {
            d1 = -d1;
        }
        out.push((d1, d.value() / d1));
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn disc(d: i64) -> Discriminant {
        Discriminant::new(d).unwrap()
    }

    fn brute_primitive(d: i64, n: u64) -> Vec<(i64, i64)> {
        let n = n as i64;
        let mut v: Vec<(i64, i64)> =
            (-n + 1..=n).filter(|b| (b * b - d).rem_euclid(4 * n) == 0).map(|b| (n, b)).collect();
        v.sort();
        v
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for d in [-7, -15, -23, -47, -71, -95] {
            for n in 1..400 {
                let got: Vec<(i64, i64)> = primitive_ideals_of_norm(disc(d), n)
                    .iter()
                    .map(|i| (i.a.to_i64().unwrap(), i.b.to_i64().unwrap()))
                    .collect();
                assert_eq!(got, brute_primitive(d, n), "D={d} n={n}");
            }
        }
    }

    #[test]
    fn small_examples() {
        let d = disc(-7);
        assert_eq!(all_ideals_of_norm(d, 1).len(), 1);
        assert_eq!(all_ideals_of_norm(d, 2).len(), 2);
        assert!(all_ideals_of_norm(d, 3).is_empty());
        assert_eq!(all_ideals_of_norm(d, 4).len(), 3);
        assert_eq!(split_type(d, 11).unwrap().name(), "split");
        assert_eq!(split_type(d, 7).unwrap().name(), "ramified");
        assert_eq!(split_type(d, 3).unwrap().name(), "inert");
        assert!(split_type(d, 9).is_err());
    }

    #[test]
    fn products_and_norms() {
        let d = disc(-23);
        let ps = all_ideals_of_norm(d, 2);
        let (p, pb) = (&ps[0], &ps[1]);
        assert_eq!(*pb, p.conj());
        assert_eq!(p.mul(pb).unwrap(), IdealRep::rational(d, 2));
        let p3 = p.pow(3).unwrap();
        assert_eq!(p3.norm(), BigInt::from(8));
        // ramified ideal squares to (|D₁|)
        let d15 = disc(-15);
        let r = ramified_ideal(d15, 5).unwrap();
        assert_eq!(r.norm(), BigInt::from(5));
        assert_eq!(r.mul(&r).unwrap(), IdealRep::rational(d15, 5));
        assert_eq!(ramified_ideal(d15, 1).unwrap(), IdealRep::unit(d15));
        assert!(ramified_ideal(d15, 3).is_err());
        assert_eq!(discriminant_factors(d15), vec![(-15, 1), (-3, 5), (1, -15), (5, -3)]);
    }

    #[test]
    fn membership() {
        let d = disc(-7);
        let p = &primitive_ideals_of_norm(d, 2)[0];
        let (w1, w2) = p.basis();
        assert!(p.contains(&w1) && p.contains(&w2));
        assert!(!p.contains(&OkElem::one(-7)));
    }
}
