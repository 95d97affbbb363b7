//! Coefficient sums B_m and C_m attached to a p-adic Hecke character, the
//! operators U_p and σ_𝔭 acting on them, and residual checks of the two
//! coefficient identities relating them to Fourier coefficients a_m.
//!
//! All sums are computed modulo p^(N+10) and reported to N digits. The fast
//! path runs on fixed-width residues; `*_direct` functions are slow
//! reference implementations built from [`crate::heckechar`] and
//! [`crate::padic`] and are meant for cross-checks on small indices.

mod context;
mod engine;
mod identities;
mod operators;
mod sieve;
mod sums;

pub use context::{HeightContext, Mutation, GUARD_DIGITS};
pub use identities::{
    fourier_am, fourier_am_direct, fourier_am_lambda, height_fourier_residual, height_fourier_residual_with, local_height_sum,
    local_height_sum_direct, mainid_residual, mainid_residual_with, slack, ConstantVariant, HeightFourierReport, Residual, Slack,
};
pub use operators::{apply_uf, euler_operator, u4_operator, ClassSequence, OpTerm, OperatorPoly, OperatorVariant};
pub use sums::{b_seq, c_minus_b, c_seq, coefficient_sum_direct};

#[cfg(test)]
mod tests;
