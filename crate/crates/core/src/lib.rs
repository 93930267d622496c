//! Exact-arithmetic workbench for the minimal ℤ₂×ℤ₂-graded Lie algebras and
//! superalgebras: constraint systems and classification, matrix
//! representations, superspace calculus and worldline models.

pub mod kernel;
pub mod matrep;
pub mod models;
pub mod report;
pub mod structure;
pub mod superspace;

pub use kernel::{Field, GradingKind, GradingVector, PowerSeries, Scalar};
pub use report::{Check, Report, Status};
