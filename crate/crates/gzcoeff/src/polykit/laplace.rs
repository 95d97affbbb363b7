use super::families::{binomial, factorial, guard, h_poly};
use crate::error::{Error, Result};
use crate::hpfloat::{self, RM};
use astro_float::BigFloat;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// A real number of the form rational / (4π)^power.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiScaled {
    pub rational: BigRational,
    pub power: u32,
}

impl PiScaled {
    pub fn to_bigfloat(&self, p: usize) -> BigFloat {
        let four_pi = hpfloat::pi(p).mul(&BigFloat::from_u32(4, p), p, RM);
        let den = four_pi.powi(self.power as usize, p, RM);
        hpfloat::from_rational(&self.rational, p).div(&den, p, RM)
    }
}

fn check(i: u64, j: u64) -> Result<()> {
    if i == 0 {
        return Err(Error::Precondition("laplace integral needs i ≥ 1".into()));
    }
    if i + j == 0 {
        return Err(Error::Precondition("laplace integral needs i + j > 0".into()));
    }
    Ok(())
}

/// ∫₀^∞ p_m(4πjy) e^{-4π(i+j)y} y^{m+2k} dy by integrating each monomial:
/// ∫ y^s e^{-cy} dy = s!/c^{s+1}. Exact up to the common power of 4π.
pub fn laplace_integral_exact(m: u32, k: u32, i: u64, j: u64) -> Result<PiScaled> {
    guard(m, k)?;
    check(i, j)?;
    let ij = BigInt::from(i + j);
    let mut acc = BigRational::zero();
    for a in 0..=m {
        let s = a + m + 2 * k;
        let num = binomial(m, a) * BigInt::from(j).pow(a) * factorial(s);
        let den = factorial(a) * ij.pow(s + 1);
        let term = BigRational::new(num, den);
        if a % 2 == 1 {
            acc -= term;
        } else {
            acc += term;
        }
    }
    Ok(PiScaled { rational: acc, power: m + 2 * k + 1 })
}

/// (m+2k)!/(4π(i+j))^{m+2k+1} · H_{m,k}((i-j)/(i+j)).
pub fn laplace_closed_form_exact(m: u32, k: u32, i: u64, j: u64) -> Result<PiScaled> {
    guard(m, k)?;
    check(i, j)?;
    let s = m + 2 * k;
    let ij = BigInt::from(i + j);
    let arg = BigRational::new(BigInt::from(i as i64 - j as i64), ij.clone());
    let h = h_poly(m, k)?.eval(&arg);
    let r = BigRational::new(factorial(s), ij.pow(s + 1)) * h;
    Ok(PiScaled { rational: r, power: s + 1 })
}

/// The integral as a high-precision float with `p` bits.
pub fn laplace_integral_oracle(m: u32, k: u32, i: u64, j: u64, p: usize) -> Result<BigFloat> {
    Ok(laplace_integral_exact(m, k, i, j)?.to_bigfloat(p))
}

pub fn laplace_closed_form(m: u32, k: u32, i: u64, j: u64, p: usize) -> Result<BigFloat> {
    Ok(laplace_closed_form_exact(m, k, i, j)?.to_bigfloat(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polykit::poly::rat;

    #[test]
    fn examples() {
        let v = laplace_integral_exact(0, 0, 1, 0).unwrap();
        assert_eq!(v, PiScaled { rational: rat(1, 1), power: 1 });
        // 2/(8π)³ = (2/8)/(4π)³·(1/... ) -> 2/(2³)/(4π)³
        let v = laplace_integral_exact(0, 1, 1, 1).unwrap();
        assert_eq!(v, PiScaled { rational: rat(2, 8), power: 3 });
        // 1/(12π)²·(1/3) = (1/9)(1/3)/(4π)²
        let v = laplace_integral_exact(1, 0, 2, 1).unwrap();
        assert_eq!(v, PiScaled { rational: rat(1, 27), power: 2 });
    }
}
