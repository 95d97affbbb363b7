//! The main Hecke-operator identity: residual valuations for every class,
//! and what happens when one ingredient is perturbed.

use gzcoeff::padic::PadicNumber;
use gzcoeff::heights::{mainid_residual, mainid_residual_with, slack, HeightContext, OperatorVariant};

fn main() -> gzcoeff::Result<()> {
    let ctx = HeightContext::new(-23, 101, 29, 2, 1, 30)?;
    let s = slack(&ctx);
    println!("D=-23 N=101 p=29 r=2 k=1, h = {}, slack {}", ctx.h(), s.total);
    for m in [1, 5] {
        for class in 0..ctx.h() {
            let res = mainid_residual(&ctx, class, m)?;
            let bad = mainid_residual_with(&ctx, class, m, OperatorVariant::DroppedSquare)?;
            println!(
                "m={m} class {class}: left side {}, v = {} (target {}); without the square v = {}",
                PadicNumber::from_json(&res.lhs)?.with_abs_prec(8),
                res.valuation,
                res.target,
                bad.valuation
            );
        }
    }
    Ok(())
}
