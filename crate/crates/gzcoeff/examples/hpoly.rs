//! The polynomials H_{m,k} and the exact identities they satisfy.

use gzcoeff::polykit::{coeff_identity_check, combo_residual, h_poly, jacobi_residual, rat, recur_residual};

fn main() -> gzcoeff::Result<()> {
    for (m, k) in [(0, 0), (1, 1), (2, 1), (3, 2)] {
        println!("H_{{{m},{k}}}(t) = {}", h_poly(m, k)?);
    }
    let (m, k) = (4, 2);
    println!("combo residual zero:  {}", combo_residual(m, k)?.is_zero());
    println!("recur residual zero:  {}", recur_residual(m, k)?.is_zero());
    println!("jacobi residual zero: {}", jacobi_residual(m, k)?.is_zero());
    // coefficient of x^{m+2k} in (ax+b)^{m+2k}(cx+d)^m
    let r = coeff_identity_check(m, k, &rat(3, 2), &rat(-1, 1), &rat(2, 5), &rat(7, 3))?;
    println!("extraction residual: {r}");
    Ok(())
}
