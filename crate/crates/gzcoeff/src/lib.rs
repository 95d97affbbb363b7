//! Coefficient identities for Hecke characters of imaginary quadratic fields.
//!
//! The crate computes class groups and ideal counts of Q(√D), theta
//! coefficients of unramified Hecke characters of infinity type (2k, 0), the
//! polynomials H_{m,k} and their relatives, p-adic logarithm sums, and the
//! B/C coefficient sequences that enter p-adic height computations. Every
//! identity between these objects is checked by an independent path.

pub mod arith;
pub mod cli;
pub mod error;
pub mod heckechar;
pub mod heights;
pub mod hpfloat;
pub mod padic;
pub mod polykit;
pub mod quadfield;

pub use error::{Error, Result};
