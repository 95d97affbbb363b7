use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::ops::{Add, Mul, Neg, Sub};

/// An algebraic integer (x + y√D)/2 of O_K, stored by (x, y) with x = y mod 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OkElem {
    pub x: BigInt,
    pub y: BigInt,
    pub d: i64,
}

impl OkElem {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>, d: i64) -> Self {
        let (x, y) = (x.into(), y.into());
        debug_assert!((&x - &y).is_even(), "not integral");
        OkElem { x, y, d }
    }

    pub fn from_int(n: impl Into<BigInt>, d: i64) -> Self {
        OkElem { x: n.into() * 2, y: BigInt::zero(), d }
    }

    pub fn one(d: i64) -> Self {
        Self::from_int(1, d)
    }

    /// √D itself.
    pub fn sqrt_d(d: i64) -> Self {
        OkElem { x: BigInt::zero(), y: BigInt::from(2), d }
    }

    pub fn conj(&self) -> Self {
        OkElem { x: self.x.clone(), y: -&self.y, d: self.d }
    }

    pub fn norm(&self) -> BigInt {
        (&self.x * &self.x - BigInt::from(self.d) * &self.y * &self.y) / 4
    }

    pub fn trace(&self) -> BigInt {
        self.x.clone()
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one(self.d);
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        OkElem { x: &self.x * s, y: &self.y * s, d: self.d }
    }
}

impl<'a> Mul<&'a OkElem> for &'a OkElem {
    type Output = OkElem;
    fn mul(self, o: &OkElem) -> OkElem {
        let d = BigInt::from(self.d);
        let x = &self.x * &o.x + &d * &self.y * &o.y;
        let y = &self.x * &o.y + &self.y * &o.x;
        OkElem { x: x / 2, y: y / 2, d: self.d }
    }
}

impl<'a> Add<&'a OkElem> for &'a OkElem {
    type Output = OkElem;
    fn add(self, o: &OkElem) -> OkElem {
        OkElem { x: &self.x + &o.x, y: &self.y + &o.y, d: self.d }
    }
}

impl<'a> Sub<&'a OkElem> for &'a OkElem {
    type Output = OkElem;
    fn sub(self, o: &OkElem) -> OkElem {
        OkElem { x: &self.x - &o.x, y: &self.y - &o.y, d: self.d }
    }
}

impl Neg for OkElem {
    type Output = OkElem;
    fn neg(self) -> OkElem {
        OkElem { x: -self.x, y: -self.y, d: self.d }
    }
}

impl std::fmt::Display for OkElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({} + {}√{})/2", self.x, self.y, self.d)
    }
}

/// The ring generator ω = (1 + √D)/2.
pub fn omega(d: i64) -> OkElem {
    OkElem { x: BigInt::one(), y: BigInt::one(), d }
}
