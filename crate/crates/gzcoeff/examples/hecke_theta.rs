//! An unramified Hecke character of infinity type (2, 0) in the three value
//! modes, and its theta coefficients r_{A,χ}(n).

use gzcoeff::heckechar::{build_char, lattice_theta_coeffs, theta_coeffs, ValueMode};

fn main() -> gzcoeff::Result<()> {
    // h = 1: exact values, χ((α)) = α²
    let ch = build_char(-7, 2, ValueMode::Exact)?;
    let th = theta_coeffs(&ch, 0, 8)?;
    for n in 1..=8 {
        println!("D = -7  r({n}) = {}", th.get(n).to_json(0));
    }

    // h = 3: complex values need a cube root on the generator class
    let ch = build_char(-23, 4, ValueMode::Complex { digits: 30 })?;
    for a in 0..ch.group().h() {
        let th = theta_coeffs(&ch, a, 6)?;
        let lat = lattice_theta_coeffs(&ch, &ch.group().representative(a), 6)?;
        println!("D = -23 class {a}: r(6) = {}, lattice sum / 2 agrees: {}", th.get(6).to_json(12), {
            let half = lat.get(6).mul(&ch.embedding().embed_int(2).inv()?);
            half.close_to(th.get(6), 1e-25, 0)?
        });
    }

    // the same character with values in Z_29 (29 splits)
    let ch = build_char(-23, 2, ValueMode::Padic { p: 29, prec: 10 })?;
    println!("values in Q_29: {}", ch.values_in_qp());
    for a in 0..ch.group().h() {
        println!("  χ on class {a}: {}", ch.table()[a].to_json(0));
    }
    Ok(())
}
