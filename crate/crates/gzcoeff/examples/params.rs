//! Choosing an admissible level N and prime p for a field.

use gzcoeff::heckechar::{HeckeChar, ValueMode};
use gzcoeff::quadfield::{admissible_params, Discriminant, ParamConstraints};

fn main() -> gzcoeff::Result<()> {
    for d in [-7, -15, -23, -47] {
        let disc = Discriminant::new(d)?;
        let plain = admissible_params(disc, &ParamConstraints::default())?;
        let has_values = |p: u64| {
            HeckeChar::build(disc, 2, ValueMode::Padic { p, prec: 4 }).map(|c| c.values_in_qp()).unwrap_or(false)
        };
        let zp = admissible_params(disc, &ParamConstraints { p_filter: Some(&has_values), ..Default::default() })?;
        println!("D={d}: smallest (N, p) = {plain:?}; with Z_p-valued χ: {zp:?}");
    }
    Ok(())
}
