use super::context::{arith_val, HeightContext};
use super::operators::{euler_operator, u4_operator, ClassSequence, OperatorVariant};
use super::sums::{b_seq, c_seq, coefficient_sum_direct};
use crate::arith;
use crate::error::{pre, Error, Result};
use crate::padic::{epsilon_a, PadicJson, PadicNumber};
use crate::polykit::h_poly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

/// Digits lost along the way, by source.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Slack {
    /// v_p of the common denominator of H
    pub h_denominator: u32,
    /// v_p of binom(2r-2, r-k-1) (divided out in a_m and the local sum)
    pub binomial: u32,
    pub total: u32,
}

/// Outcome of one identity check at (class, m).
#[derive(Debug, Clone, Serialize)]
pub struct Residual {
    pub class: usize,
    pub m: u64,
    /// v_p(LHS - RHS), capped at the reported precision
    pub valuation: i64,
    pub target: i64,
    pub pass: bool,
    pub lhs: PadicJson,
    pub rhs: PadicJson,
}

fn residual(ctx: &HeightContext, class: usize, m: u64, lhs: &PadicNumber, rhs: &PadicNumber, slack: u32) -> Result<Residual> {
    let n = ctx.prec() as i64;
    let target = n - slack as i64;
    let diff = lhs.sub(rhs);
    if diff.is_zero() && diff.abs_prec() < target {
        return Err(Error::Precision(format!(
            "difference known to {} digits, need {target} (class {class}, m = {m})",
            diff.abs_prec()
        )));
    }
    let valuation = diff.val_lower().min(n);
    Ok(Residual {
        class,
        m,
        valuation,
        target,
        pass: valuation >= target,
        lhs: lhs.with_abs_prec(n).to_json(),
        rhs: rhs.with_abs_prec(n).to_json(),
    })
}

/// Precision lost in the C/B sums and in the normalising constants.
pub fn slack(ctx: &HeightContext) -> Slack {
    let h = ctx.h_slack();
    let b = arith_val(&ctx.binom(), ctx.p());
    Slack { h_denominator: h, binomial: b, total: h + b }
}

/// v_p(𝐅 C_m - (U_p⁴ - p^(2r-2) U_p²) B_m) at one class, with a chosen
/// variant of 𝐅.
pub fn mainid_residual_with(ctx: &HeightContext, class: usize, m: u64, variant: OperatorVariant) -> Result<Residual> {
    let cs = |a: usize, mm: u64| c_seq(ctx, a, mm);
    let bs = |a: usize, mm: u64| b_seq(ctx, a, mm);
    let lhs = euler_operator(ctx, variant).apply(ctx, &cs, class, m)?;
    let rhs = u4_operator(ctx).apply(ctx, &bs, class, m)?;
    residual(ctx, class, m, &lhs, &rhs, ctx.h_slack())
}

/// v_p(𝐅 C_m - (U_p⁴ - p^(2r-2) U_p²) B_m) at one class.
pub fn mainid_residual(ctx: &HeightContext, class: usize, m: u64) -> Result<Residual> {
    mainid_residual_with(ctx, class, m, OperatorVariant::Verbatim)
}

fn fourier_pre(ctx: &HeightContext, class: usize, m: u64) -> Result<()> {
    if class >= ctx.h() {
        return pre(format!("class {class} out of range (h = {})", ctx.h()));
    }
    if m == 0 || m % ctx.p() != 0 {
        return pre(format!("p = {} must divide m = {m}", ctx.p()));
    }
    if arith::kronecker(ctx.disc().value(), ctx.level() as i64) != 1 {
        return pre("(D/N) must be 1");
    }
    Ok(())
}

/// (-1)^r / binom(2r-2, r-k-1) · |D|^(-k)
fn fourier_constant(ctx: &HeightContext) -> Result<PadicNumber> {
    let (p, w) = (ctx.p(), ctx.work_prec());
    let sign = if ctx.r() % 2 == 0 { 1 } else { -1 };
    let den = ctx.binom() * BigInt::from(ctx.disc().abs()).pow(ctx.k());
    let v = arith_val(&den, p);
    PadicNumber::from_i64(sign, p, w).div(&PadicNumber::from_int(&den, p, w + v))
}

/// a_m of the log_p-weighted form: (-1)^r/binom · |D|^(-k) · B_m (fast path).
pub fn fourier_am(ctx: &HeightContext, class: usize, m: u64) -> Result<PadicNumber> {
    fourier_pre(ctx, class, m)?;
    Ok(fourier_constant(ctx)?.mul(&b_seq(ctx, class, m)?))
}

/// The same coefficient summed term by term from ideals, divisor sums and
/// exact H values.
pub fn fourier_am_direct(ctx: &HeightContext, class: usize, m: u64) -> Result<PadicNumber> {
    fourier_pre(ctx, class, m)?;
    Ok(fourier_constant(ctx)?.mul(&coefficient_sum_direct(ctx, class, m, true)?))
}

/// a_m for a general weight λ on Z_p^×:
///
/// (-1)^(r-1)/binom · m^R (D/-N) |D|^(-k) Σ_{p∤n} r_{A,χ}(m|D| - nN) H(1 - 2nN/(m|D|))
///     · Σ_{d|n} ε_A(n, d) λ((m|D| - nN)/|D| · d²/n²).
pub fn fourier_am_lambda(
    ctx: &HeightContext,
    class: usize,
    m: u64,
    lambda: &dyn Fn(&BigRational) -> Result<PadicNumber>,
) -> Result<PadicNumber> {
    fourier_pre(ctx, class, m)?;
    let (p, w) = (ctx.p(), ctx.work_prec());
    let d = ctx.disc().value();
    let ad = ctx.disc().abs();
    let level = ctx.level();
    let rr = ctx.hdeg();
    let h = h_poly(rr, ctx.k())?;
    let big_m = m * ad;
    let cn = ctx.group().class_norm(class);
    let mut acc = PadicNumber::zero(p, w as i64);
    let mut n = 1u64;
    while n * level < big_m {
        if n % p != 0 {
            let j = big_m - n * level;
            let r = ctx.r_chi_direct(class, j as i64);
            if !r.is_zero() {
                let mut inner = PadicNumber::zero(p, w as i64);
                for dd in arith::divisors(n) {
                    let e = epsilon_a(d, level, cn, n, dd)?;
                    if e == 0 {
                        continue;
                    }
                    let arg = BigRational::new(BigInt::from(j) * BigInt::from(dd * dd), BigInt::from(ad) * BigInt::from(n * n));
                    inner = inner.add(&lambda(&arg)?.scale_int(e as i64));
                }
                let t = BigRational::one() - BigRational::new(BigInt::from(2 * n * level), BigInt::from(big_m));
                let hv = PadicNumber::from_rational(&h.eval(&t), p, w);
                acc = acc.add(&r.mul(&hv).mul(&inner));
            }
        }
        n += 1;
    }
    let sign = if (ctx.r() - 1) % 2 == 0 { 1 } else { -1 } * arith::kronecker_i128(d as i128, -(level as i128)) as i64;
    let den = ctx.binom() * BigInt::from(ad).pow(ctx.k());
    let v = arith_val(&den, p);
    let c = PadicNumber::from_int(&(BigInt::from(sign) * BigInt::from(m).pow(rr)), p, w)
        .div(&PadicNumber::from_int(&den, p, w + v))?;
    Ok(c.mul(&acc))
}

fn height_pre(ctx: &HeightContext, class: usize, m: u64) -> Result<()> {
    if class >= ctx.h() {
        return pre(format!("class {class} out of range (h = {})", ctx.h()));
    }
    if m == 0 {
        return pre("index m must be positive");
    }
    if m.gcd(&ctx.level()) != 1 {
        return pre(format!("gcd(m, N) = gcd({m}, {}) must be 1", ctx.level()));
    }
    if ctx.level() <= 1 {
        return pre("N must exceed 1");
    }
    let c = ctx.group().count_ra(class, m as i64);
    if c != 0 {
        return pre(format!("r_A(m) = {c} ≠ 0 for class {class}, m = {m}"));
    }
    Ok(())
}

/// -(4|D|)^R / (D^k binom) with R = r - k - 1
fn height_constant(ctx: &HeightContext) -> Result<PadicNumber> {
    let (p, w) = (ctx.p(), ctx.work_prec());
    let num = -BigInt::from(4 * ctx.disc().abs()).pow(ctx.hdeg());
    let den = ctx.binom() * BigInt::from(ctx.disc().value()).pow(ctx.k());
    let v = arith_val(&den, p);
    PadicNumber::from_int(&num, p, w).div(&PadicNumber::from_int(&den, p, w + v))
}

/// -(4|D|m)^R/(D^k binom) Σ_{0<n<m|D|/N} σ_A(n) r_{A,χ}(m|D| - nN) H(1 - 2nN/(m|D|))
/// under gcd(m, N) = 1, r_A(m) = 0, N > 1.
pub fn local_height_sum(ctx: &HeightContext, class: usize, m: u64) -> Result<PadicNumber> {
    height_pre(ctx, class, m)?;
    Ok(height_constant(ctx)?.mul(&c_seq(ctx, class, m)?))
}

/// Term-by-term evaluation of [`local_height_sum`].
pub fn local_height_sum_direct(ctx: &HeightContext, class: usize, m: u64) -> Result<PadicNumber> {
    height_pre(ctx, class, m)?;
    Ok(height_constant(ctx)?.mul(&coefficient_sum_direct(ctx, class, m, false)?))
}

/// Deliberate fault in the constant of the height/Fourier relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstantVariant {
    Verbatim,
    /// (4|D|)^R replaced by 2·(4|D|)^R
    Doubled,
}

/// Both readings of the height/Fourier relation at one (class, m).
#[derive(Debug, Clone, Serialize)]
pub struct HeightFourierReport {
    /// constants exactly as displayed: (-1)^(k+1) (4|D|)^R u²
    pub verbatim: Residual,
    /// the same with the overall sign reversed
    pub sign_flipped: Residual,
    pub slack: Slack,
}

/// 𝐅 applied to m ↦ local_height_sum against
/// (-1)^(k+1) (4|D|)^R u² (a_{mp⁴} - p^(2r-2) a_{mp²}).
pub fn height_fourier_residual(ctx: &HeightContext, class: usize, m: u64) -> Result<HeightFourierReport> {
    height_fourier_residual_with(ctx, class, m, ConstantVariant::Verbatim)
}

pub fn height_fourier_residual_with(
    ctx: &HeightContext,
    class: usize,
    m: u64,
    variant: ConstantVariant,
) -> Result<HeightFourierReport> {
    fourier_pre(ctx, class, m)?;
    let p = ctx.p();
    if m.gcd(&ctx.level()) != 1 {
        return pre(format!("gcd(m, N) = gcd({m}, {}) must be 1", ctx.level()));
    }
    for i in 0..=4 {
        let mi = m * p.pow(i);
        for a in 0..ctx.h() {
            if ctx.group().count_ra(a, mi as i64) != 0 {
                return pre(format!("r_A(m p^{i}) ≠ 0 for class {a}, m = {m}"));
            }
        }
    }
    let w = ctx.work_prec();
    let hs = |a: usize, mm: u64| local_height_sum(ctx, a, mm);
    let fs = |a: usize, mm: u64| fourier_am(ctx, a, mm);
    let lhs = euler_operator(ctx, OperatorVariant::Verbatim).apply(ctx, &hs as &dyn ClassSequence, class, m)?;
    let u4 = u4_operator(ctx).apply(ctx, &fs as &dyn ClassSequence, class, m)?;
    let sign = if (ctx.k() + 1) % 2 == 0 { 1 } else { -1 };
    let mut konst = BigInt::from(sign) * BigInt::from(4 * ctx.disc().abs()).pow(ctx.hdeg());
    if variant == ConstantVariant::Doubled {
        konst *= 2;
    }
    let rhs = PadicNumber::from_int(&konst, p, w).mul(&u4);
    let sl = slack(ctx);
    Ok(HeightFourierReport {
        verbatim: residual(ctx, class, m, &lhs, &rhs, sl.total)?,
        sign_flipped: residual(ctx, class, m, &lhs, &rhs.neg(), sl.total)?,
        slack: sl,
    })
}
