//! The elementary Laplace integrals behind holomorphic projection, and the
//! projected coefficients of a small product.

use gzcoeff::hpfloat;
use gzcoeff::polykit::{holproj_coeffs, laplace_closed_form, laplace_integral_exact, laplace_integral_oracle, rat};

fn main() -> gzcoeff::Result<()> {
    let bits = hpfloat::bits_for_digits(40);
    for (m, k, i, j) in [(1, 0, 1, 0), (2, 1, 3, 2), (3, 3, 5, 5)] {
        let exact = laplace_integral_exact(m, k, i, j)?;
        let a = laplace_integral_oracle(m, k, i, j, bits)?;
        let b = laplace_closed_form(m, k, i, j, bits)?;
        println!(
            "m={m} k={k} i={i} j={j}: {}/(4π)^{}, relative gap {:e}",
            exact.rational,
            exact.power,
            hpfloat::to_f64(&hpfloat::rel_diff(&a, &b, bits))
        );
    }
    let a: Vec<_> = (1..=6).map(|n| rat(n, 1)).collect();
    let b: Vec<_> = (0..=6).map(|n| rat(1, n + 1)).collect();
    let c = holproj_coeffs(&a, &b, 3, 1, 6)?;
    for (n, v) in c.iter().enumerate() {
        println!("c({}) = {v}", n + 1);
    }
    Ok(())
}
