//! Local-height coefficient sums against Fourier coefficients, with both
//! overall sign conventions reported.

use gzcoeff::heights::{height_fourier_residual, local_height_sum, HeightContext};

fn main() -> gzcoeff::Result<()> {
    for (r, k) in [(2, 1), (3, 1)] {
        let ctx = HeightContext::new(-7, 23, 11, r, k, 20)?;
        let m = 33;
        println!("r={r} k={k}: height sum at m = {}", local_height_sum(&ctx, 0, m)?.with_abs_prec(8));
        let rep = height_fourier_residual(&ctx, 0, m)?;
        println!(
            "  verbatim constants: v = {} ({}), sign flipped: v = {} ({})",
            rep.verbatim.valuation,
            if rep.verbatim.pass { "pass" } else { "fail" },
            rep.sign_flipped.valuation,
            if rep.sign_flipped.pass { "pass" } else { "fail" }
        );
    }
    Ok(())
}
