use super::context::{arith_val, HeightContext, Mutation, SumKind};
use crate::error::{pre, Result};
use crate::padic::{sigma_a, PadicNumber};
use crate::polykit::h_poly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

/// S/(L_H·|D|^R) with S given mod p^W: the value of the sum as a p-adic number.
fn scaled(ctx: &HeightContext, s: &num_bigint::BigUint) -> Result<PadicNumber> {
    let w = ctx.work;
    let raw = PadicNumber::from_residue(s, ctx.p, w);
    let scale = ctx.sum_scale();
    let v = arith_val(&scale, ctx.p);
    let unit = PadicNumber::from_int(&scale, ctx.p, w + v);
    raw.div(&unit)
}

fn check_class(ctx: &HeightContext, class: usize, m: u64) -> Result<()> {
    if class >= ctx.h() {
        return pre(format!("class {class} out of range (h = {})", ctx.h()));
    }
    if m == 0 {
        return pre("index m must be positive");
    }
    Ok(())
}

/// C_m^A = m^R Σ_{1 ≤ n ≤ m|D|/N} r_{A,χ}(m|D| - nN) σ_A(n) H(1 - 2nN/(m|D|)),
/// R = r - k - 1.
pub fn c_seq(ctx: &HeightContext, class: usize, m: u64) -> Result<PadicNumber> {
    check_class(ctx, class, m)?;
    scaled(ctx, &ctx.sums(SumKind::All, m)?[class])
}

/// B_m^A: the same sum restricted to p ∤ n.
pub fn b_seq(ctx: &HeightContext, class: usize, m: u64) -> Result<PadicNumber> {
    check_class(ctx, class, m)?;
    scaled(ctx, &ctx.sums(SumKind::Coprime, m)?[class])
}

/// The p | n part of C_m^A, accumulated separately along n = p·t.
pub fn c_minus_b(ctx: &HeightContext, class: usize, m: u64) -> Result<PadicNumber> {
    check_class(ctx, class, m)?;
    scaled(ctx, &ctx.sums(SumKind::Divisible, m)?[class])
}

/// Reference evaluation of C_m^A (or B_m^A with `coprime_only`), term by
/// term: r from ideal enumeration, σ from the divisor sum, H exactly.
pub fn coefficient_sum_direct(ctx: &HeightContext, class: usize, m: u64, coprime_only: bool) -> Result<PadicNumber> {
    check_class(ctx, class, m)?;
    let (p, w) = (ctx.p, ctx.work);
    let rr = ctx.hdeg();
    let mut h = h_poly(rr, ctx.k)?;
    if ctx.mutation == Mutation::HPlusOne {
        h = &h + &crate::polykit::RationalPoly::one();
    }
    let big_m = m * ctx.d.abs();
    let cn = ctx.class_norms[class];
    let mut acc = PadicNumber::zero(p, w as i64);
    let mut n = 1u64;
    while n * ctx.level < big_m {
        if !(coprime_only && n % p == 0) {
            let r = ctx.r_chi_direct(class, (big_m - n * ctx.level) as i64);
            if !r.is_zero() {
                let s = sigma_a(ctx.d.value(), ctx.level, cn, n, p, w)?;
                let t = BigRational::one() - BigRational::new(BigInt::from(2 * n * ctx.level), BigInt::from(big_m));
                let mut hv = h.eval(&t) * BigRational::from_integer(BigInt::from(m).pow(rr));
                if ctx.mutation == Mutation::WeightPlusOne {
                    hv += BigRational::one();
                }
                acc = acc.add(&r.mul(&s).mul(&PadicNumber::from_rational(&hv, p, w)));
            }
        }
        n += 1;
    }
    Ok(acc.with_abs_prec(w as i64))
}
