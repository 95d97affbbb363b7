use super::complex::HpComplex;
use super::kelem::KElem;
use crate::error::{Error, Result};
use crate::hpfloat::{self, RM};
use crate::padic::{sqrt_zp, PadicNumber, PadicQuad};
use crate::polykit::rat_string;
use astro_float::BigFloat;
use num_rational::BigRational;
use serde_json::{json, Value};

/// Where character values are computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValueMode {
    /// Exact elements of K (class number one only).
    Exact,
    /// Complex numbers to `digits` decimal digits, via √D ↦ i√|D|.
    Complex { digits: u32 },
    /// Q_p or its unramified quadratic extension, to `prec` digits, via the
    /// embedding that sends 𝔭 into the maximal ideal.
    Padic { p: u64, prec: u32 },
}

impl ValueMode {
    pub fn name(&self) -> &'static str {
        match self {
            ValueMode::Exact => "exact",
            ValueMode::Complex { .. } => "complex",
            ValueMode::Padic { .. } => "padic",
        }
    }
}

/// A character value or theta coefficient in one of the three modes.
#[derive(Debug, Clone)]
pub enum AlgebraicValue {
    Exact(KElem),
    Complex(HpComplex),
    Padic(PadicQuad),
}

fn mismatch() -> Error {
    Error::Mode("values from different modes".into())
}

impl AlgebraicValue {
    pub fn mode_name(&self) -> &'static str {
        match self {
            AlgebraicValue::Exact(_) => "exact",
            AlgebraicValue::Complex(_) => "complex",
            AlgebraicValue::Padic(_) => "padic",
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        match (self, o) {
            (AlgebraicValue::Exact(a), AlgebraicValue::Exact(b)) => AlgebraicValue::Exact(a.add(b)),
            (AlgebraicValue::Complex(a), AlgebraicValue::Complex(b)) => AlgebraicValue::Complex(a.add(b)),
            (AlgebraicValue::Padic(a), AlgebraicValue::Padic(b)) => AlgebraicValue::Padic(a.add(b)),
            _ => panic!("{}", mismatch()),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        match self {
            AlgebraicValue::Exact(a) => AlgebraicValue::Exact(a.neg()),
            AlgebraicValue::Complex(a) => AlgebraicValue::Complex(a.neg()),
            AlgebraicValue::Padic(a) => AlgebraicValue::Padic(a.neg()),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        match (self, o) {
            (AlgebraicValue::Exact(a), AlgebraicValue::Exact(b)) => AlgebraicValue::Exact(a.mul(b)),
            (AlgebraicValue::Complex(a), AlgebraicValue::Complex(b)) => AlgebraicValue::Complex(a.mul(b)),
            (AlgebraicValue::Padic(a), AlgebraicValue::Padic(b)) => AlgebraicValue::Padic(a.mul(b)),
            _ => panic!("{}", mismatch()),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(match self {
            AlgebraicValue::Exact(a) => AlgebraicValue::Exact(a.inv().ok_or(Error::DivisionByZero)?),
            AlgebraicValue::Complex(a) => AlgebraicValue::Complex(a.inv().ok_or(Error::DivisionByZero)?),
            AlgebraicValue::Padic(a) => AlgebraicValue::Padic(a.inv()?),
        })
    }

    pub fn pow(&self, e: u32) -> Self {
        match self {
            AlgebraicValue::Exact(a) => AlgebraicValue::Exact(a.pow(e)),
            AlgebraicValue::Complex(a) => AlgebraicValue::Complex(a.pow(e)),
            AlgebraicValue::Padic(a) => AlgebraicValue::Padic(a.pow(e)),
        }
    }

    pub fn powi(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u32))
        } else {
            Ok(self.inv()?.pow((-e) as u32))
        }
    }

    /// Complex conjugation; not defined on p-adic values.
    pub fn conj(&self) -> Result<Self> {
        match self {
            AlgebraicValue::Exact(a) => Ok(AlgebraicValue::Exact(a.conj())),
            AlgebraicValue::Complex(a) => Ok(AlgebraicValue::Complex(a.conj())),
            AlgebraicValue::Padic(_) => Err(Error::Mode("conjugation of a p-adic value".into())),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            AlgebraicValue::Exact(a) => a.is_zero(),
            AlgebraicValue::Complex(a) => a.is_zero(),
            AlgebraicValue::Padic(a) => a.re.is_zero() && a.im.is_zero(),
        }
    }

    /// Compare two values: exact equality in exact mode, |a - b| ≤ tol in
    /// complex mode, and agreement to `padic_digits` absolute digits in
    /// p-adic mode.
    pub fn close_to(&self, o: &Self, tol: f64, padic_digits: i64) -> Result<bool> {
        Ok(match (self, o) {
            (AlgebraicValue::Exact(a), AlgebraicValue::Exact(b)) => a == b,
            (AlgebraicValue::Complex(a), AlgebraicValue::Complex(b)) => a.dist_f64(b) <= tol,
            (AlgebraicValue::Padic(a), AlgebraicValue::Padic(b)) => a.diff_valuation(b) >= padic_digits,
            _ => return Err(mismatch()),
        })
    }

    /// |value| in complex mode (for tolerance scaling); None otherwise.
    pub fn abs_f64(&self) -> Option<f64> {
        match self {
            AlgebraicValue::Complex(a) => Some(a.abs_f64()),
            _ => None,
        }
    }

    pub fn as_exact(&self) -> Option<&KElem> {
        match self {
            AlgebraicValue::Exact(a) => Some(a),
            _ => None,
        }
    }

    pub fn as_complex(&self) -> Option<&HpComplex> {
        match self {
            AlgebraicValue::Complex(a) => Some(a),
            _ => None,
        }
    }

    /// The value as an element of Q_p, if it lies there.
    pub fn as_zp(&self) -> Option<PadicNumber> {
        match self {
            AlgebraicValue::Padic(a) if a.in_zp() => Some(a.re.clone()),
            _ => None,
        }
    }

    /// Exact values as a + b√D with rational a, b; complex values to
    /// `digits` significant digits.
    pub fn to_json(&self, digits: usize) -> Value {
        match self {
            AlgebraicValue::Exact(e) => {
                let two = BigRational::from_integer(2.into());
                json!({"mode": "exact", "a": rat_string(&(&e.x / &two)), "b": rat_string(&(&e.y / &two))})
            }
            AlgebraicValue::Complex(a) => {
                let (re, im) = a.to_strings(digits);
                json!({"mode": "complex", "re": re, "im": im})
            }
            AlgebraicValue::Padic(a) => json!({
                "mode": "padic",
                "re": serde_json::to_value(a.re.to_json()).unwrap(),
                "im": serde_json::to_value(a.im.to_json()).unwrap(),
                "nonresidue": a.u,
            }),
        }
    }
}

/// The embedding of K used by a value mode.
#[derive(Debug, Clone)]
pub enum Embedding {
    Exact { d: i64 },
    Complex { d: i64, bits: usize, sqrt_abs_d: BigFloat },
    Padic { d: i64, p: u64, prec: u32, sqrt_d: PadicNumber },
}

impl Embedding {
    /// `p_b` is the b of the prime 𝔭 = (p, (-b + √D)/2) that the p-adic
    /// embedding sends into the maximal ideal.
    pub fn new(d: i64, mode: ValueMode, p_b: Option<i64>) -> Result<Self> {
        Ok(match mode {
            ValueMode::Exact => Embedding::Exact { d },
            ValueMode::Complex { digits } => {
                let bits = hpfloat::bits_for_digits(digits);
                let s = BigFloat::from_u64(d.unsigned_abs(), bits).sqrt(bits, RM);
                Embedding::Complex { d, bits, sqrt_abs_d: s }
            }
            ValueMode::Padic { p, prec } => {
                let b = p_b.ok_or_else(|| Error::Precondition("p-adic embedding needs the prime above p".into()))?;
                let dd = PadicNumber::from_i64(d, p, prec);
                let hint = b.rem_euclid(p as i64) as u64;
                Embedding::Padic { d, p, prec, sqrt_d: sqrt_zp(&dd, Some(hint))? }
            }
        })
    }

    pub fn d(&self) -> i64 {
        match self {
            Embedding::Exact { d } | Embedding::Complex { d, .. } | Embedding::Padic { d, .. } => *d,
        }
    }

    pub fn embed(&self, k: &KElem) -> AlgebraicValue {
        match self {
            Embedding::Exact { .. } => AlgebraicValue::Exact(k.clone()),
            Embedding::Complex { bits, sqrt_abs_d, .. } => {
                let p = *bits;
                let two = BigFloat::from_u32(2, p);
                let re = hpfloat::from_rational(&k.x, p).div(&two, p, RM);
                let im = hpfloat::from_rational(&k.y, p).mul(sqrt_abs_d, p, RM).div(&two, p, RM);
                AlgebraicValue::Complex(HpComplex::new(re, im, p))
            }
            Embedding::Padic { p, prec, sqrt_d, .. } => {
                let x = PadicNumber::from_rational(&k.x, *p, *prec + 2);
                let y = PadicNumber::from_rational(&k.y, *p, *prec + 2);
                let half = PadicNumber::from_rational(&num_rational::BigRational::new(1.into(), 2.into()), *p, *prec + 2);
                let v = x.add(&y.mul(sqrt_d)).mul(&half).with_abs_prec(x.val_lower().min(y.val_lower()) + *prec as i64);
                AlgebraicValue::Padic(PadicQuad::from_zp(v))
            }
        }
    }

    pub fn embed_int(&self, n: i64) -> AlgebraicValue {
        self.embed(&KElem::from_int(n, self.d()))
    }

    pub fn one(&self) -> AlgebraicValue {
        self.embed_int(1)
    }

    pub fn zero(&self) -> AlgebraicValue {
        match self {
            Embedding::Padic { p, prec, .. } => {
                AlgebraicValue::Padic(PadicQuad::from_zp(PadicNumber::zero(*p, *prec as i64)))
            }
            _ => self.embed_int(0),
        }
    }

    /// Default comparison tolerance 10^(5-P)·scale in complex mode.
    pub fn tolerance(&self, scale: f64) -> f64 {
        match self {
            Embedding::Complex { bits, .. } => {
                let digits = ((*bits - 64) as f64 / std::f64::consts::LOG2_10).floor();
                10f64.powf(5.0 - digits) * scale.max(1.0)
            }
            _ => 0.0,
        }
    }

    pub fn padic_digits(&self) -> i64 {
        match self {
            Embedding::Padic { prec, .. } => *prec as i64,
            _ => 0,
        }
    }
}
