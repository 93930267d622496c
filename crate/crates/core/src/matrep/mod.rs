//! Graded 4×4 matrix representations: sector patterns, closure checks, the
//! representation families and the no-representation analysis.

use thiserror::Error;

use crate::kernel::{GradingError, GradingVector};

mod families;
mod matrix;
mod noreps;
mod quaternion;
mod rep;
mod ring;

pub use families::*;
pub use matrix::{
    bracket_graded, bracket_matrices, entry_sector, fermion_parity, grade_vector, kron, sector_of_matrix, GradedMatrix,
    ParityOps, VECTOR_GRADINGS_2, VECTOR_GRADINGS_4,
};
pub use noreps::{
    is_exceptional, prove_no_rep, solve_linear, NoRepOutcome, Poly, ProofTrace, Refutation, DEFAULT_BUDGET,
};
pub use quaternion::{
    composition_report, identification_report, identifications, identify, quaternion_units, scalar_multiple,
    Identification,
};
pub use rep::{verify_rep, RelationResidual, RepVerification, Representation, ALGEBRA_NAMES, SUPERALGEBRA_NAMES};
pub use ring::{DPoly, Ring};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MatrepError {
    #[error("unsupported matrix dimension {0}")]
    Dimension(usize),
    #[error("matrix mixes sectors {0} and {1}")]
    MixedSupport(GradingVector, GradingVector),
    #[error("zero matrix has no sector")]
    ZeroMatrix,
    #[error("zero vector has no grading")]
    ZeroVector,
    #[error("vector is not homogeneous")]
    MixedVector,
    #[error(transparent)]
    Grading(#[from] GradingError),
    #[error("{0} has no printed 4x4 representation")]
    Excluded(String),
    #[error("invalid label: {0}")]
    Label(String),
    #[error("unknown variant {0}")]
    UnknownVariant(String),
    #[error("variant {variant} does not apply to {label}")]
    Condition { variant: String, label: String },
    #[error("unknown parameter {0}")]
    UnknownParameter(String),
    #[error("missing parameter {0}")]
    MissingParameter(String),
    #[error("parameter {0} must be nonzero")]
    ZeroParameter(String),
    #[error("{0} is not one of the cases without a printed representation")]
    NotExceptional(String),
    #[error("generator {0} vanishes for these parameters")]
    VanishingGenerator(String),
}
