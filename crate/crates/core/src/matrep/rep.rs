use serde_json::{json, Value};

use super::matrix::{bracket_graded, sector_of_matrix, GradedMatrix};
use super::ring::Ring;
use crate::kernel::{GradingKind, GradingVector, Scalar};
use crate::report::{Check, Report};
use crate::structure::{BracketTable, Constants, BASIS_GRADINGS};

pub const ALGEBRA_NAMES: [&str; 4] = ["H", "Q1", "Q2", "Q3"];
pub const SUPERALGEBRA_NAMES: [&str; 4] = ["H", "Q10", "Q01", "Z"];

/// Four matrices, one per sector in the order 00, 10, 01, 11, together with
/// the structure constants they are meant to realize.
#[derive(Debug, Clone, PartialEq)]
pub struct Representation<R: Ring = Scalar> {
    pub kind: GradingKind,
    pub mats: [GradedMatrix<R>; 4],
    pub constants: Constants,
}

impl<R: Ring> Representation<R> {
    pub fn new(constants: Constants, mats: [GradedMatrix<R>; 4]) -> Self {
        let kind = match constants {
            Constants::Superalgebra(_) => GradingKind::Z2Z2Superalgebra,
            _ => GradingKind::Z2Z2Algebra,
        };
        Representation { kind, mats, constants }
    }

    pub fn names(&self) -> [&'static str; 4] {
        match self.kind {
            GradingKind::Z2Z2Superalgebra => SUPERALGEBRA_NAMES,
            _ => ALGEBRA_NAMES,
        }
    }

    pub fn to_json(&self) -> Value {
        let names = self.names();
        let mats: serde_json::Map<String, Value> =
            names.iter().zip(&self.mats).map(|(n, m)| (n.to_string(), m.to_json())).collect();
        json!({ "kind": self.constants.kind_name(), "matrices": mats })
    }
}

/// Outcome of checking one defining bracket.
#[derive(Debug, Clone, PartialEq)]
pub struct RelationResidual<R: Ring = Scalar> {
    pub relation: String,
    pub residual: GradedMatrix<R>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RepVerification<R: Ring = Scalar> {
    pub relations: Vec<RelationResidual<R>>,
    /// Per generator: nonzero and supported inside its sector pattern.
    pub nonzero: [bool; 4],
    pub in_sector: [bool; 4],
    /// Sector actually occupied by each generator, when homogeneous.
    pub sectors: [Option<GradingVector>; 4],
}

impl<R: Ring> RepVerification<R> {
    pub fn ok(&self) -> bool {
        self.relations.iter().all(|r| r.residual.is_zero())
            && self.nonzero.iter().all(|b| *b)
            && self.in_sector.iter().all(|b| *b)
    }

    pub fn to_report(&self, prefix: &str, names: [&str; 4]) -> Report {
        let mut rep = Report::new();
        for (i, n) in names.iter().enumerate() {
            rep.push(Check::from_bool(format!("{prefix}{n} is nonzero"), self.nonzero[i], "zero matrix"));
            rep.push(Check::from_bool(format!("{prefix}{n} lies in its sector"), self.in_sector[i], "support outside pattern"));
        }
        for r in &self.relations {
            rep.push(
                Check::from_bool(format!("{prefix}{}", r.relation), r.residual.is_zero(), format!("{:?}", r.residual))
                    .anchor("closure of the graded brackets on the matrices"),
            );
        }
        rep
    }
}

fn bracket_table(c: &Constants) -> BracketTable {
    match c {
        Constants::Algebra(a) => BracketTable::algebra(a),
        Constants::Superalgebra(s) => BracketTable::superalgebra(s),
        Constants::Z2(_) => panic!("4x4 representations realize algebras or superalgebras"),
    }
}

/// Evaluate every bracket (g_i, g_j), i ≤ j, on the matrices and subtract
/// the value prescribed by the structure constants.
pub fn verify_rep<R: Ring>(rep: &Representation<R>) -> RepVerification<R> {
    let t = bracket_table(&rep.constants);
    let names = rep.names();
    let mut relations = Vec::new();
    for i in 0..4 {
        for j in i..4 {
            let lhs = bracket_graded(rep.kind, &rep.mats[i], &BASIS_GRADINGS[i], &rep.mats[j], &BASIS_GRADINGS[j])
                .expect("basis gradings have arity 2");
            let mut rhs = GradedMatrix::zeros(lhs.dim());
            let mut rhs_text = Vec::new();
            for k in 0..4 {
                let c = &t.table[i][j][k];
                if !c.is_zero() {
                    rhs = rhs.add(&rep.mats[k].scale(c));
                    rhs_text.push(if c.is_one() { names[k].to_string() } else { format!("({c}){}", names[k]) });
                }
            }
            let rhs_text = if rhs_text.is_empty() { "0".to_string() } else { rhs_text.join(" + ") };
            let open = if crate::kernel::sign_i32(rep.kind, &BASIS_GRADINGS[i], &BASIS_GRADINGS[j]) == 1 {
                ("[", "]")
            } else {
                ("{", "}")
            };
            relations.push(RelationResidual {
                relation: format!("{}{},{}{} = {rhs_text}", open.0, names[i], names[j], open.1),
                residual: lhs.sub(&rhs),
            });
        }
    }
    let nonzero = std::array::from_fn(|i| !rep.mats[i].is_zero());
    let sectors: [Option<GradingVector>; 4] = std::array::from_fn(|i| sector_of_matrix(&rep.mats[i]).ok());
    let in_sector = match rep.kind {
        // The three nonzero sectors of an algebra are interchangeable, so the
        // odd generators may occupy them in any order.
        GradingKind::Z2Z2Algebra => std::array::from_fn(|i| match &sectors[i] {
            None => false,
            Some(g) if i == 0 => g.is_zero(),
            Some(g) => !g.is_zero() && (1..4).filter(|&j| sectors[j].as_ref() == Some(g)).count() == 1,
        }),
        _ => std::array::from_fn(|i| sectors[i].as_ref() == Some(&BASIS_GRADINGS[i])),
    };
    RepVerification { relations, nonzero, in_sector, sectors }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::AlgebraConstants;

    fn s(n: i64) -> Scalar {
        Scalar::int(n)
    }

    #[test]
    fn detects_wrong_constants() {
        // A5-type unit matrices: {Q1,Q2} = Q3, H = diag(1,1,0,0)
        let mats = [
            GradedMatrix::diag(&[s(1), s(1), s(0), s(0)]),
            GradedMatrix::from_entries(4, &[(1, 3, s(1))]),
            GradedMatrix::from_entries(4, &[(3, 2, s(1))]),
            GradedMatrix::from_entries(4, &[(1, 2, s(1))]),
        ];
        let good = Representation::new(Constants::Algebra(AlgebraConstants::from_ints([0, 0, 1], [1, -1, 0])), mats.clone());
        assert!(verify_rep(&good).ok());
        let bad = Representation::new(Constants::Algebra(AlgebraConstants::from_ints([0, 0, 1], [0, 0, 0])), mats);
        assert!(!verify_rep(&bad).ok());
    }
}
