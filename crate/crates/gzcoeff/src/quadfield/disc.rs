use crate::arith;
use crate::error::{Error, Result};
use num_bigint::BigInt;

/// A negative odd fundamental discriminant: D < -4, D = 1 mod 4, squarefree.
///
/// With these restrictions the unit group is {±1}, so w = 2 and u = 1 everywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(transparent)]
pub struct Discriminant(i64);

impl Discriminant {
    pub fn new(d: i64) -> Result<Self> {
        if d >= -4 || d.rem_euclid(4) != 1 || !arith::is_squarefree(d.unsigned_abs()) {
            return Err(Error::InvalidDiscriminant(d));
        }
        Ok(Discriminant(d))
    }

    pub fn value(self) -> i64 {
        self.0
    }

    pub fn abs(self) -> u64 {
        self.0.unsigned_abs()
    }

    pub fn big(self) -> BigInt {
        BigInt::from(self.0)
    }

    /// Number of units, always 2 here.
    pub fn w(self) -> u32 {
        2
    }

    /// Half the unit count, always 1 here.
    pub fn u(self) -> u32 {
        1
    }
}

impl std::fmt::Display for Discriminant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_and_rejects() {
        for d in [-7, -11, -15, -23, -47, -163] {
            assert!(Discriminant::new(d).is_ok(), "{d}");
        }
        for d in [-3, -4, -8, -5, 5, -27, -63, 0, 1] {
            assert!(Discriminant::new(d).is_err(), "{d}");
        }
    }
}
