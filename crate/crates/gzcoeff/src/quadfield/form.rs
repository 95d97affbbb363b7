use super::element::OkElem;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A positive definite primitive binary quadratic form ax² + bxy + cy².
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadForm {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

/// Unimodular change of basis recorded during reduction: rows give the new
/// basis (ω₁', ω₂') in terms of the old one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transform {
    pub m: [[BigInt; 2]; 2],
}

impl Transform {
    fn identity() -> Self {
        Transform {
            m: [[BigInt::one(), BigInt::zero()], [BigInt::zero(), BigInt::one()]],
        }
    }

    pub fn apply(&self, w1: &OkElem, w2: &OkElem) -> (OkElem, OkElem) {
        let r = |row: &[BigInt; 2]| &w1.scale(&row[0]) + &w2.scale(&row[1]);
        (r(&self.m[0]), r(&self.m[1]))
    }
}

impl QuadForm {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Result<Self> {
        let f = QuadForm { a: a.into(), b: b.into(), c: c.into() };
        if !f.a.is_positive() {
            return Err(Error::Precondition(format!("form {f}: a must be positive")));
        }
        if !f.a.gcd(&f.b).gcd(&f.c).is_one() {
            return Err(Error::Precondition(format!("form {f} is not primitive")));
        }
        if !f.disc().is_negative() {
            return Err(Error::Precondition(format!("form {f} is not positive definite")));
        }
        Ok(f)
    }

    /// The form (a, b, (b² - D)/4a); `a` must divide (b² - D)/4.
    pub fn from_ab(a: &BigInt, b: &BigInt, d: i64) -> Result<Self> {
        let num: BigInt = b * b - BigInt::from(d);
        let four_a: BigInt = a * 4;
        if !(&num % &four_a).is_zero() {
            return Err(Error::Precondition(format!("b² ≢ D mod 4a for a={a}, b={b}, D={d}")));
        }
        QuadForm::new(a.clone(), b.clone(), num / four_a)
    }

    /// The identity (1, 1, (1 - D)/4).
    pub fn principal(d: i64) -> Self {
        QuadForm { a: BigInt::one(), b: BigInt::one(), c: BigInt::from((1 - d) / 4) }
    }

    pub fn disc(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    pub fn disc_i64(&self) -> i64 {
        i64::try_from(self.disc()).expect("discriminant out of range")
    }

    pub fn is_reduced(&self) -> bool {
        let ab = self.b.abs();
        ab <= self.a && self.a <= self.c && (!(ab == self.a || self.a == self.c) || !self.b.is_negative())
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        &self.a * x * x + &self.b * x * y + &self.c * y * y
    }

    /// The inverse class (a, -b, c), reduced.
    pub fn inverse(&self) -> Self {
        QuadForm { a: self.a.clone(), b: -&self.b, c: self.c.clone() }.reduce()
    }

    pub fn reduce(&self) -> Self {
        self.reduce_tracked().0
    }

    /// Reduce, recording the basis change that carries the root τ of aτ² + bτ + c
    /// (upper half plane) to the root of the reduced form.
    pub fn reduce_tracked(&self) -> (Self, Transform) {
        let (mut a, mut b, mut c) = (self.a.clone(), self.b.clone(), self.c.clone());
        let mut t = Transform::identity();
        loop {
            if !(b > -&a && b <= a) {
                // τ -> τ + k, ω₂ -> ω₂ + kω₁
                let two_a = &a * 2;
                let k = (&b - &a).div_ceil(&two_a);
                c = &a * &k * &k - &b * &k + &c;
                b = &b - &two_a * &k;
                let row0 = t.m[0].clone();
                t.m[1][0] += &k * &row0[0];
                t.m[1][1] += &k * &row0[1];
            }
            if a > c || (a == c && b.is_negative()) {
                // τ -> -1/τ, (ω₁, ω₂) -> (ω₂, -ω₁)
                std::mem::swap(&mut a, &mut c);
                b = -b;
                let [r0, r1] = t.m.clone();
                t.m = [r1, [-&r0[0], -&r0[1]]];
                continue;
            }
            break;
        }
        (QuadForm { a, b, c }, t)
    }

    /// Dirichlet composition followed by reduction.
    pub fn compose(&self, other: &QuadForm) -> Result<Self> {
        let d = self.disc();
        if d != other.disc() {
            return Err(Error::DiscriminantMismatch(self.to_string(), other.to_string()));
        }
        let (a1, b1) = (&self.a, &self.b);
        let (a2, b2) = (&other.a, &other.b);
        let s: BigInt = (b1 + b2) / 2;
        let g1 = a1.extended_gcd(a2);
        let g = g1.gcd.extended_gcd(&s);
        let e = g.gcd;
        let u = &g.x * &g1.x;
        let v = &g.x * &g1.y;
        let w = g.y;
        let a3: BigInt = a1 * a2 / (&e * &e);
        let b3: BigInt = (&u * a1 * b2 + &v * a2 * b1 + &w * (b1 * b2 + &d) / 2) / &e;
        let b3 = b3.mod_floor(&(&a3 * 2));
        let c3 = (&b3 * &b3 - &d) / (&a3 * 4);
        Ok(QuadForm { a: a3, b: b3, c: c3 }.reduce())
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let d = self.disc_i64();
        let mut base = self.reduce();
        let mut acc = QuadForm::principal(d);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base).expect("same discriminant");
            }
            base = base.compose(&base).expect("same discriminant");
            e >>= 1;
        }
        acc
    }
}

impl std::fmt::Display for QuadForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// All reduced forms of discriminant d, sorted by (a, b).
pub fn reduced_forms_raw(d: i64) -> Vec<QuadForm> {
    let ad = d.unsigned_abs() as i128;
    let mut out = Vec::new();
    let mut a: i128 = 1;
    while 3 * a * a <= ad {
        for b in -a + 1..=a {
            let num = b * b - d as i128;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (a == c && b < 0) {
                continue;
            }
            if a.gcd(&b).gcd(&c) != 1 {
                continue;
            }
            out.push(QuadForm { a: a.into(), b: b.into(), c: c.into() });
        }
        a += 1;
    }
    out.sort();
    out
}
