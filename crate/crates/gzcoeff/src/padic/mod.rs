//! p-adic numbers at fixed precision, Teichmüller lifts, the Iwasawa
//! logarithm, roots in Z_p and its unramified quadratic extension, and the
//! genus-weighted divisor sums ε_A(n, d) and σ_A(n).

mod genus;
mod log;
mod number;
mod roots;

pub use genus::{epsilon_a, genus_split, sigma_a, sigma_a_direct, sigma_log_coefficients};
pub use log::{iwasawa_log, iwasawa_log_int, iwasawa_log_via_power, log_terms, teichmuller, teichmuller_residue};
pub use number::{mod_inverse, p_pow, split_p, PadicJson, PadicNumber};
pub use roots::{has_root_zp, nonresidue, nth_root_quad, nth_root_zp, sqrt_zp, PadicQuad};
