//! Exact scalars, truncated power series and the grading calculus shared by
//! every other module.

mod grading;
mod scalar;
mod series;

pub use grading::{
    bracket_kind, bracket_sign, degree_sum, inner_product, jacobi_combination, jacobi_signs,
    BracketKind, GradingError, GradingKind, GradingVector,
};
pub(crate) use grading::sign_i32;
pub use scalar::{Field, Scalar, ScalarParseError};
pub use series::{PowerSeries, SeriesError, DEFAULT_ORDER};
