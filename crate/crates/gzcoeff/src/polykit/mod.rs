//! Exact polynomial calculus: H_{m,k}, G_{m,k}, Jacobi and truncated
//! exponential polynomials, holomorphic-projection coefficients, the Laplace
//! integral oracle and the coefficient-extraction identity.

mod families;
mod holproj;
mod laplace;
mod poly;

pub use families::{
    binomial, coeff_identity_check, combo_residual, factorial, g_poly, h_at_one, h_poly, jacobi_poly,
    jacobi_residual, lcm_of_denominators, legendre_residual, p_poly, recur_residual, MAX_ORDER,
};
pub use holproj::holproj_coeffs;
pub use laplace::{
    laplace_closed_form, laplace_closed_form_exact, laplace_integral_exact, laplace_integral_oracle, PiScaled,
};
pub use poly::{int, parse_rat, rat, rat_string, RationalPoly};
