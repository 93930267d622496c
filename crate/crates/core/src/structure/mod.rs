//! Structure constants of the minimal graded (super)algebras, their graded
//! Jacobi residuals, and reduction to canonical table rows.

mod constants;
mod label;
mod normalize;
mod random;
mod verify;
mod witness;

pub use constants::{
    AlgebraConstants, BracketTable, Constants, ConstantsError, ConstantsRecord, SuperalgebraConstants,
    Z2Constants, BASIS_GRADINGS,
};
pub use label::{table_entry, table_entry_checked, Family, LabelError, TableLabel};
pub use normalize::{
    classify_z2, normalize, normalize_algebra, normalize_superalgebra, NormalizeError, Normalized,
};
pub use random::{maybe, nonzero, random_admissible, random_algebra, random_superalgebra};
pub use verify::{family_jacobi_check, family_residual_check, round_trip_report, sample_labels, verify_tables};
pub use witness::{
    apply_algebra, apply_equivalence, apply_superalgebra, apply_z2, EquivalenceWitness, WitnessError,
    ALGEBRA_PERMS, SUPERALGEBRA_PERMS,
};

pub fn jacobi_residuals_z2(c: &Z2Constants) -> crate::kernel::Scalar {
    &c.r * &c.s
}

pub fn jacobi_residuals_algebra(c: &AlgebraConstants) -> [crate::kernel::Scalar; 3] {
    c.residuals()
}

pub fn jacobi_residuals_superalgebra(c: &SuperalgebraConstants) -> [crate::kernel::Scalar; 8] {
    c.residuals()
}
