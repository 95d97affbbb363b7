//! Unramified Hecke characters χ of infinity type (ℓ, 0) on Q(√D), their
//! values in exact, complex and p-adic modes, and the theta coefficients
//! r_{A,χ}(n) with a lattice-sum cross-check.
//!
//! χ is pinned down by χ((α)) = α^ℓ together with one root choice per cyclic
//! generator of the class group; the choices are recorded on the character.

mod character;
mod complex;
mod kelem;
mod theta;
mod value;

pub use character::{build_char, padic_value, HeckeChar, RootChoice};
pub use complex::HpComplex;
pub use kelem::KElem;
pub use theta::{
    additive_character, lattice_points, lattice_theta_coeffs, theta_coeffs, twist_coefficients, weighted_theta,
    CoeffSeries,
};
pub use value::{AlgebraicValue, Embedding, ValueMode};
