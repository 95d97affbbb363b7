//! Arithmetic of K = Q(√D) for odd fundamental D < -4: reduced forms, the
//! class group, ideals by norm, Kronecker symbols and parameter search.

mod classgroup;
mod disc;
mod element;
mod form;
mod ideal;
mod kronecker;
mod params;

pub use classgroup::{check_group_axioms, reduced_forms, ClassGroup};
pub use disc::Discriminant;
pub use element::{omega, OkElem};
pub use form::{QuadForm, Transform};
pub use ideal::{
    all_ideals_of_norm, discriminant_factors, primitive_ideals_of_norm, ramified_ideal, split_type, IdealRep,
    SplitType,
};
pub use kronecker::kronecker;
pub use params::{admissible_params, ParamConstraints};

use crate::error::Result;

/// Convenience wrapper: ideals of norm n with class indices, building the class group.
pub fn ideals_of_norm(d: Discriminant, n: u64) -> Result<Vec<(IdealRep, usize)>> {
    Ok(ClassGroup::new(d)?.ideals_of_norm(n))
}

/// Convenience wrapper for r_A(n).
pub fn count_ra(d: Discriminant, class: usize, n: i64) -> Result<u64> {
    Ok(ClassGroup::new(d)?.count_ra(class, n))
}
