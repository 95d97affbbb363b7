//! Fourier coefficients a_m of the derivative: the fast path, the direct
//! path, and the general-weight formula with λ = log_p.

use gzcoeff::heights::{fourier_am, fourier_am_direct, fourier_am_lambda, HeightContext};
use gzcoeff::padic::iwasawa_log;

fn main() -> gzcoeff::Result<()> {
    let ctx = HeightContext::new(-7, 23, 11, 3, 1, 20)?;
    let m = 33;
    let fast = fourier_am(&ctx, 0, m)?;
    let direct = fourier_am_direct(&ctx, 0, m)?;
    let log = |x: &_| iwasawa_log(ctx.p(), x, ctx.work_prec());
    let general = fourier_am_lambda(&ctx, 0, m, &log)?;
    println!("a_{m}          = {fast}");
    println!("direct       = {direct}");
    println!("general (λ = log_p) = {general}");
    // the general formula carries the opposite overall sign
    println!("fast = -general: {}", fast.diff_valuation(&general.neg()) >= ctx.prec() as i64);
    Ok(())
}
