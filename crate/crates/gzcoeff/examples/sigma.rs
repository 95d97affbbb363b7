//! Genus-weighted divisor sums σ_A(n) as p-adic numbers and as integer
//! combinations of log_p(q).

use gzcoeff::padic::{epsilon_a, sigma_a, sigma_log_coefficients};
use gzcoeff::quadfield::{ClassGroup, Discriminant};

fn main() -> gzcoeff::Result<()> {
    let (d, level, p) = (-23i64, 101u64, 29u64);
    let g = ClassGroup::new(Discriminant::new(d)?)?;
    for a in 0..g.h() {
        let cn = g.class_norm(a);
        for n in [6u64, 46, 90] {
            let eps: Vec<i8> = gzcoeff::arith::divisors(n)
                .into_iter()
                .map(|dd| epsilon_a(d, level, cn, n, dd))
                .collect::<Result<_, _>>()?;
            let coeffs = sigma_log_coefficients(d, level, cn, n)?;
            println!("class {a} n={n}: ε = {eps:?}, σ = Σ c_q log(q) with {coeffs:?}");
            println!("    σ = {}", sigma_a(d, level, cn, n, p, 8)?);
        }
    }
    Ok(())
}
