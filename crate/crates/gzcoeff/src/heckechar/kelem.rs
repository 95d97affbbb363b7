use crate::quadfield::OkElem;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// An element (x + y√D)/2 of K with rational x, y.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KElem {
    pub x: BigRational,
    pub y: BigRational,
    pub d: i64,
}

impl KElem {
    pub fn new(x: BigRational, y: BigRational, d: i64) -> Self {
        KElem { x, y, d }
    }

    pub fn from_int(n: impl Into<BigInt>, d: i64) -> Self {
        KElem { x: BigRational::from_integer(n.into() * 2), y: BigRational::zero(), d }
    }

    pub fn one(d: i64) -> Self {
        Self::from_int(1, d)
    }

    pub fn zero(d: i64) -> Self {
        Self::from_int(0, d)
    }

    pub fn from_ok(a: &OkElem) -> Self {
        KElem { x: BigRational::from_integer(a.x.clone()), y: BigRational::from_integer(a.y.clone()), d: a.d }
    }

    /// num/den for an algebraic integer num and a nonzero rational integer den.
    pub fn from_fraction(num: &OkElem, den: &BigInt) -> Self {
        KElem {
            x: BigRational::new(num.x.clone(), den.clone()),
            y: BigRational::new(num.y.clone(), den.clone()),
            d: num.d,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.y.is_zero()
    }

    pub fn conj(&self) -> Self {
        KElem { x: self.x.clone(), y: -&self.y, d: self.d }
    }

    pub fn norm(&self) -> BigRational {
        (&self.x * &self.x - &self.y * &self.y * BigInt::from(self.d)) / BigInt::from(4)
    }

    pub fn trace(&self) -> BigRational {
        self.x.clone()
    }

    /// The element as an algebraic integer, if it is one.
    pub fn to_ok(&self) -> Option<OkElem> {
        if !self.x.is_integer() || !self.y.is_integer() {
            return None;
        }
        let (x, y) = (self.x.to_integer(), self.y.to_integer());
        if (&x - &y) % 2 != BigInt::zero() {
            return None;
        }
        Some(OkElem::new(x, y, self.d))
    }

    pub fn add(&self, o: &Self) -> Self {
        KElem { x: &self.x + &o.x, y: &self.y + &o.y, d: self.d }
    }

    pub fn sub(&self, o: &Self) -> Self {
        KElem { x: &self.x - &o.x, y: &self.y - &o.y, d: self.d }
    }

    pub fn neg(&self) -> Self {
        KElem { x: -&self.x, y: -&self.y, d: self.d }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let two = BigInt::from(2);
        let x = (&self.x * &o.x + &self.y * &o.y * BigInt::from(self.d)) / &two;
        let y = (&self.x * &o.y + &self.y * &o.x) / &two;
        KElem { x, y, d: self.d }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        KElem { x: &self.x * q, y: &self.y * q, d: self.d }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(self.conj().scale(&(BigRational::one() / n)))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.d);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Signed power; negative exponents need a nonzero element.
    pub fn powi(&self, e: i64) -> Option<Self> {
        if e >= 0 {
            Some(self.pow(e as u32))
        } else {
            self.inv().map(|i| i.pow((-e) as u32))
        }
    }
}

impl std::fmt::Display for KElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({} + {}√{})/2", self.x, self.y, self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_operations() {
        let d = -7;
        let w = KElem::from_ok(&crate::quadfield::omega(d));
        assert_eq!(w.norm(), BigRational::from_integer(2.into()));
        let i = w.inv().unwrap();
        assert_eq!(w.mul(&i), KElem::one(d));
        // ω² = ω - 2
        assert_eq!(w.pow(2), w.sub(&KElem::from_int(2, d)));
        assert_eq!(w.powi(-2).unwrap().mul(&w.pow(2)), KElem::one(d));
        assert!(i.to_ok().is_none());
        assert_eq!(w.pow(3).to_ok().unwrap().norm(), BigInt::from(8));
    }
}
