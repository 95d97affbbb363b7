use super::families::{binomial, h_poly};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// Holomorphic-projection coefficients
/// c(n) = ((-1)^m / binom(2r-2, m)) n^m Σ_{i+j=n} a(i) b(j) H_{m,k}((i-j)/(i+j)),
/// m = r - k - 1, for n = 1..=bound.
///
/// `a[i-1]` holds a(i) (cusp form, i ≥ 1) and `b[j]` holds b(j) (j ≥ 0); missing
/// entries count as zero.
pub fn holproj_coeffs(a: &[BigRational], b: &[BigRational], r: u32, k: u32, bound: usize) -> Result<Vec<BigRational>> {
    if !(k < r) {
        return Err(Error::Precondition(format!("need 0 ≤ k < r, got k={k}, r={r}")));
    }
    let m = r - k - 1;
    let h = h_poly(m, k)?;
    let mut s = BigRational::new(BigInt::from(1), binomial(2 * r - 2, m));
    if m % 2 == 1 {
        s = -s;
    }
    let at = |i: usize| a.get(i.wrapping_sub(1)).cloned().unwrap_or_else(BigRational::zero);
    let bt = |j: usize| b.get(j).cloned().unwrap_or_else(BigRational::zero);
    let mut out = Vec::with_capacity(bound);
    for n in 1..=bound {
        let nn = BigRational::from_integer(BigInt::from(n));
        let mut acc = BigRational::zero();
        for i in 1..=n {
            let j = n - i;
            let (ai, bj) = (at(i), bt(j));
            if ai.is_zero() || bj.is_zero() {
                continue;
            }
            // n^m H((i-j)/n) as the homogenised polynomial in (i - j, n)
            let x = BigRational::from_integer(BigInt::from(i as i64 - j as i64));
            acc += ai * bj * h.homogeneous_eval(&x, &nn, m as usize);
        }
        out.push(&s * acc);
    }
    Ok(out)
}
