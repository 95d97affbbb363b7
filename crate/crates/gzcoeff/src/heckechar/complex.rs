use crate::hpfloat::{self, RM};
use astro_float::BigFloat;

/// A complex number with `BigFloat` parts at a fixed binary precision.
#[derive(Debug, Clone)]
pub struct HpComplex {
    pub re: BigFloat,
    pub im: BigFloat,
    pub bits: usize,
}

impl HpComplex {
    pub fn new(re: BigFloat, im: BigFloat, bits: usize) -> Self {
        HpComplex { re, im, bits }
    }

    pub fn zero(bits: usize) -> Self {
        HpComplex { re: BigFloat::from_u32(0, bits), im: BigFloat::from_u32(0, bits), bits }
    }

    pub fn one(bits: usize) -> Self {
        HpComplex { re: BigFloat::from_u32(1, bits), im: BigFloat::from_u32(0, bits), bits }
    }

    pub fn from_f64(re: f64, im: f64, bits: usize) -> Self {
        HpComplex { re: BigFloat::from_f64(re, bits), im: BigFloat::from_f64(im, bits), bits }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        let p = self.bits;
        HpComplex { re: self.re.add(&o.re, p, RM), im: self.im.add(&o.im, p, RM), bits: p }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let p = self.bits;
        HpComplex { re: self.re.sub(&o.re, p, RM), im: self.im.sub(&o.im, p, RM), bits: p }
    }

    pub fn neg(&self) -> Self {
        HpComplex { re: self.re.neg(), im: self.im.neg(), bits: self.bits }
    }

    pub fn conj(&self) -> Self {
        HpComplex { re: self.re.clone(), im: self.im.neg(), bits: self.bits }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = self.bits;
        let re = self.re.mul(&o.re, p, RM).sub(&self.im.mul(&o.im, p, RM), p, RM);
        let im = self.re.mul(&o.im, p, RM).add(&self.im.mul(&o.re, p, RM), p, RM);
        HpComplex { re, im, bits: p }
    }

    pub fn scale(&self, s: &BigFloat) -> Self {
        let p = self.bits;
        HpComplex { re: self.re.mul(s, p, RM), im: self.im.mul(s, p, RM), bits: p }
    }

    /// |z|².
    pub fn abs2(&self) -> BigFloat {
        let p = self.bits;
        self.re.mul(&self.re, p, RM).add(&self.im.mul(&self.im, p, RM), p, RM)
    }

    pub fn abs(&self) -> BigFloat {
        self.abs2().sqrt(self.bits, RM)
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.abs2();
        let p = self.bits;
        Some(HpComplex { re: self.re.div(&n, p, RM), im: self.im.neg().div(&n, p, RM), bits: p })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.bits);
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

    /// |self - o| as an f64 (exact enough for tolerance tests far below 1e-300).
    pub fn dist_f64(&self, o: &Self) -> f64 {
        hpfloat::to_f64(&self.sub(o).abs())
    }

    pub fn abs_f64(&self) -> f64 {
        hpfloat::to_f64(&self.abs())
    }

    /// The principal d-th root: a double-precision polar estimate refined by
    /// Newton's method at full precision.
    pub fn principal_root(&self, d: u32) -> Option<Self> {
        if self.is_zero() || d == 0 {
            return None;
        }
        if d == 1 {
            return Some(self.clone());
        }
        let (x, y) = (hpfloat::to_f64(&self.re), hpfloat::to_f64(&self.im));
        let r = x.hypot(y).powf(1.0 / d as f64);
        let t = y.atan2(x) / d as f64;
        let mut z = Self::from_f64(r * t.cos(), r * t.sin(), self.bits);
        let dd = BigFloat::from_u32(d, self.bits);
        let rounds = (self.bits as f64 / 40.0).log2().ceil() as usize + 3;
        for _ in 0..rounds {
            let zd1 = z.pow(d - 1);
            let f = zd1.mul(&z).sub(self);
            let step = f.mul(&zd1.scale(&dd).inv()?);
            z = z.sub(&step);
        }
        Some(z)
    }

    pub fn to_strings(&self, digits: usize) -> (String, String) {
        (hpfloat::to_string_digits(&self.re, digits), hpfloat::to_string_digits(&self.im, digits))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn principal_roots() {
        let bits = hpfloat::bits_for_digits(40);
        let w = HpComplex::from_f64(-3.0, 4.0, bits);
        let r = w.principal_root(2).unwrap();
        // √(-3 + 4i) = 1 + 2i
        assert!(r.dist_f64(&HpComplex::from_f64(1.0, 2.0, bits)) < 1e-38);
        let c = w.principal_root(3).unwrap();
        assert!(c.pow(3).dist_f64(&w) < 1e-37);
        // principal: argument in (-π/3, π/3]
        assert!(hpfloat::to_f64(&c.re) > 0.0);
        let i = w.inv().unwrap();
        assert!(i.mul(&w).dist_f64(&HpComplex::one(bits)) < 1e-38);
    }
}
