use super::poly::{int, RationalPoly};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Largest m + 2k accepted, to keep factorials sane.
pub const MAX_ORDER: u32 = 64;

pub(crate) fn guard(m: u32, k: u32) -> Result<()> {
    if m + 2 * k > MAX_ORDER {
        return Err(Error::Polynomial(format!("m + 2k = {} exceeds {MAX_ORDER}", m + 2 * k)));
    }
    Ok(())
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// H_{m,k}(t) = (d/dt)^{m+2k} [(t² - 1)^m (t - 1)^{2k}] / (2^m (m+2k)!).
pub fn h_poly(m: u32, k: u32) -> Result<RationalPoly> {
    guard(m, k)?;
    let base = &RationalPoly::from_ints(&[-1, 0, 1]).pow(m) * &RationalPoly::from_ints(&[-1, 1]).pow(2 * k);
    let d = base.nth_derivative((m + 2 * k) as usize);
    let den = factorial(m + 2 * k) << m;
    Ok(d.scale(&BigRational::new(BigInt::one(), den)))
}

/// G_{m,k}(t) = Σ_{a=0}^{m} (-1)^a (m+2k+a)! / ((a!)² (m-a)!) t^a.
pub fn g_poly(m: u32, k: u32) -> Result<RationalPoly> {
    guard(m, k)?;
    let cs = (0..=m)
        .map(|a| {
            let num = factorial(m + 2 * k + a);
            let den = factorial(a) * factorial(a) * factorial(m - a);
            let q = BigRational::new(num, den);
            if a % 2 == 1 {
                -q
            } else {
                q
            }
        })
        .collect();
    Ok(RationalPoly::new(cs))
}

/// Jacobi polynomial by the Rodrigues formula
/// P_n^{(α,β)} = (-1)^n/(2^n n!) (1-t)^{-α}(1+t)^{-β} dⁿ[(1-t)^{α+n}(1+t)^{β+n}],
/// with negative α, β allowed as long as every step stays polynomial.
pub fn jacobi_poly(n: u32, alpha: i32, beta: i32) -> Result<RationalPoly> {
    let (an, bn) = (alpha + n as i32, beta + n as i32);
    if an < 0 || bn < 0 {
        return Err(Error::Polynomial(format!(
            "Rodrigues expression for P_{n}^({alpha},{beta}) is not polynomial"
        )));
    }
    let one_minus = RationalPoly::from_ints(&[1, -1]);
    let one_plus = RationalPoly::from_ints(&[1, 1]);
    let inner = &one_minus.pow(an as u32) * &one_plus.pow(bn as u32);
    let mut d = inner.nth_derivative(n as usize);
    // (1 - t)^{-α}
    if alpha <= 0 {
        d = &d * &one_minus.pow((-alpha) as u32);
    } else {
        d = d
            .div_linear_power(&int(1), alpha as u32)
            .ok_or_else(|| Error::Polynomial(format!("P_{n}^({alpha},{beta}): (1-t)^{alpha} does not divide")))?;
        if alpha % 2 == 1 {
            d = -&d;
        }
    }
    if beta <= 0 {
        d = &d * &one_plus.pow((-beta) as u32);
    } else {
        d = d
            .div_linear_power(&int(-1), beta as u32)
            .ok_or_else(|| Error::Polynomial(format!("P_{n}^({alpha},{beta}): (1+t)^{beta} does not divide")))?;
    }
    let mut s = BigRational::new(BigInt::one(), factorial(n) << n);
    if n % 2 == 1 {
        s = -s;
    }
    Ok(d.scale(&s))
}

/// p_m(x) = Σ_{a=0}^{m} binom(m, a) (-x)^a / a!.
pub fn p_poly(m: u32) -> RationalPoly {
    RationalPoly::new(
        (0..=m)
            .map(|a| {
                let q = BigRational::new(binomial(m, a), factorial(a));
                if a % 2 == 1 {
                    -q
                } else {
                    q
                }
            })
            .collect(),
    )
}

/// G_{m,k}(t) - ((m+2k)!/m!)·H_{m,k}(1 - 2t); zero iff the identity holds.
pub fn combo_residual(m: u32, k: u32) -> Result<RationalPoly> {
    let h = h_poly(m, k)?.compose(&RationalPoly::from_ints(&[1, -2]));
    let s = BigRational::new(factorial(m + 2 * k), factorial(m));
    Ok(&g_poly(m, k)? - &h.scale(&s))
}

/// Three-term recurrence in m for G_{m,k}, m ≥ 1; zero iff it holds.
pub fn recur_residual(m: u32, k: u32) -> Result<RationalPoly> {
    if m == 0 {
        return Err(Error::Polynomial("recurrence needs m ≥ 1".into()));
    }
    let (mi, ki) = (m as i64, k as i64);
    let lhs = g_poly(m + 1, k)?.scale(&int((mi + 1) * (mi + 1) * (mi + ki)));
    let lin = RationalPoly::from_ints(&[mi * mi + mi + 2 * ki * mi + ki, -(mi + ki) * (2 * mi + 2 * ki + 2)]);
    let mid = (&lin * &g_poly(m, k)?).scale(&int(2 * mi + 2 * ki + 1));
    let low = g_poly(m - 1, k)?.scale(&int((mi + ki + 1) * (mi + 2 * ki) * (mi + 2 * ki)));
    Ok(&lhs - &(&mid - &low))
}

/// (1+t)^{2k} H_{m,k} - 2^{2k} P_{m+2k}^{(0,-2k)}; zero iff the relation holds.
pub fn jacobi_residual(m: u32, k: u32) -> Result<RationalPoly> {
    let lhs = &RationalPoly::from_ints(&[1, 1]).pow(2 * k) * &h_poly(m, k)?;
    let rhs = jacobi_poly(m + 2 * k, 0, -2 * k as i32)?.scale(&int(BigInt::one() << (2 * k)));
    Ok(&lhs - &rhs)
}

/// H_{m,0} - P_m^{(0,0)}.
pub fn legendre_residual(m: u32) -> Result<RationalPoly> {
    Ok(&h_poly(m, 0)? - &jacobi_poly(m, 0, 0)?)
}

/// Coefficient of x^{m+2k} in (ax+b)^{m+2k}(cx+d)^m minus the closed form
/// a^{2k}(ad-bc)^m H_{m,k}((ad+bc)/(ad-bc)).
pub fn coeff_identity_check(
    m: u32,
    k: u32,
    a: &BigRational,
    b: &BigRational,
    c: &BigRational,
    d: &BigRational,
) -> Result<BigRational> {
    guard(m, k)?;
    let det = a * d - b * c;
    if det.is_zero() {
        return Err(Error::Precondition("ad = bc".into()));
    }
    let f = &RationalPoly::linear(a.clone(), b.clone()).pow(m + 2 * k)
        * &RationalPoly::linear(c.clone(), d.clone()).pow(m);
    let lhs = f.coeff((m + 2 * k) as usize);
    let arg = (a * d + b * c) / &det;
    let rhs = num_traits::pow(a.clone(), 2 * k as usize) * num_traits::pow(det, m as usize) * h_poly(m, k)?.eval(&arg);
    Ok(lhs - rhs)
}

/// Exact value of H_{m,k}(1) (always 1).
pub fn h_at_one(m: u32, k: u32) -> Result<BigRational> {
    Ok(h_poly(m, k)?.eval(&BigRational::one()))
}

/// Integer gcd helper for callers normalising denominators.
pub fn lcm_of_denominators(p: &RationalPoly) -> BigInt {
    p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polykit::poly::rat;

    #[test]
    fn frozen_examples() {
        assert_eq!(h_poly(0, 0).unwrap(), RationalPoly::one());
        assert_eq!(h_poly(1, 1).unwrap(), RationalPoly::from_ints(&[-1, 2]));
        assert_eq!(h_poly(2, 0).unwrap(), RationalPoly::new(vec![rat(-1, 2), int(0), rat(3, 2)]));
        assert_eq!(g_poly(1, 0).unwrap(), RationalPoly::from_ints(&[1, -2]));
        assert_eq!(g_poly(1, 1).unwrap(), RationalPoly::from_ints(&[6, -24]));
        assert_eq!(g_poly(0, 1).unwrap(), RationalPoly::from_ints(&[2]));
        assert_eq!(jacobi_poly(0, 0, 0).unwrap(), RationalPoly::one());
        assert_eq!(jacobi_poly(1, 0, 0).unwrap(), RationalPoly::t());
        assert_eq!(
            jacobi_poly(2, 0, -2).unwrap(),
            RationalPoly::new(vec![rat(1, 4), rat(1, 2), rat(1, 4)])
        );
        assert_eq!(p_poly(0), RationalPoly::one());
        assert_eq!(p_poly(1), RationalPoly::from_ints(&[1, -1]));
        assert_eq!(p_poly(2), RationalPoly::new(vec![int(1), int(-2), rat(1, 2)]));
    }

    #[test]
    fn degree_is_m() {
        for m in 0..6 {
            for k in 0..4 {
                assert_eq!(h_poly(m, k).unwrap().degree(), Some(m as usize));
            }
        }
    }

    #[test]
    fn guard_rejects_large_orders() {
        assert!(h_poly(60, 3).is_err());
        assert!(h_poly(64, 0).is_ok());
        assert!(jacobi_poly(1, -3, 0).is_err());
    }

    #[test]
    fn known_jacobi_value() {
        // P_1^{(α,β)}(t) = (α+1) + (α+β+2)(t-1)/2
        let p = jacobi_poly(1, 2, 3).unwrap();
        assert_eq!(p, RationalPoly::new(vec![rat(-1, 2), rat(7, 2)]));
    }

    #[test]
    fn coeff_identity_examples() {
        let z = int(0);
        let o = int(1);
        assert!(coeff_identity_check(1, 0, &o, &z, &z, &o).unwrap().is_zero());
        assert!(coeff_identity_check(0, 1, &int(2), &int(3), &z, &o).unwrap().is_zero());
        assert!(coeff_identity_check(1, 1, &o, &o, &o, &o).is_err());
    }
}
