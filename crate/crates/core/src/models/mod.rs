//! Worldline models: D-module operators, differential-polynomial calculus for
//! the classical A1 and S7 actions, and the operator engine for the quantum
//! S7 model.

mod classical;
mod dmodule;
mod jets;
mod quantum;

use std::str::FromStr;

use thiserror::Error;

pub use classical::{
    a1_invariance, a1_lagrangian, a1_model, action_closure, invariance_under_all, lagrangian_invariance_a1, model_table,
    s7_invariance, s7_lagrangian, s7_lagrangian_report, s7_model, s7_printed_lagrangian, s7_relations,
};
pub use dmodule::{dmodule_rep, dmodule_report, duplicate_z_block, swap_z_blocks, DModuleCase};
pub use jets::{field_name, max_jet_order, DSym, DiffPoly, FieldModel, FUNCS, MAX_JET_ORDER};
pub use quantum::{
    bracket_residual, oracle_residual, p2_diff, p2_mul, quantum_s7, quantum_s7_operators, ConcreteG, Func, Letter,
    OpExpr, OpMatrix, RewriteOrder, Word, P2, QUANTUM_NAMES,
};

use crate::kernel::Scalar;
use crate::report::{Check, Report};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ModelsError {
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("jet order {0} exceeds the supported maximum of 2")]
    JetOrder(u8),
    #[error("unknown model {0:?} (expected a1, s7-classical or s7-quantum)")]
    UnknownCase(String),
}

/// The three models exposed on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    A1,
    S7Classical,
    S7Quantum,
}

impl FromStr for Model {
    type Err = ModelsError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "a1" => Ok(Model::A1),
            "s7" | "s7-classical" => Ok(Model::S7Classical),
            "s7-quantum" => Ok(Model::S7Quantum),
            _ => Err(ModelsError::UnknownCase(s.to_string())),
        }
    }
}

const CONVENTION: &str = "graded partial derivatives act from the left; δp/δφ = Σ_k (−∂_t)^k ∂p/∂φ^(k)";

/// All checks for one model; `c` is cos²γ and is ignored by A1.
pub fn model_report(model: Model, c: &Scalar) -> Report {
    let mut rep = Report::new();
    match model {
        Model::A1 => {
            rep.push(Check::pass("variational calculus convention").detail(CONVENTION));
            rep.extend(dmodule_report(DModuleCase::A1, c));
            rep.extend(a1_invariance());
        }
        Model::S7Classical => {
            rep.push(Check::pass("variational calculus convention").detail(CONVENTION));
            rep.extend(dmodule_report(DModuleCase::S7, c));
            rep.extend(s7_invariance(c));
        }
        Model::S7Quantum => rep.extend(quantum_s7(c)),
    }
    rep
}
