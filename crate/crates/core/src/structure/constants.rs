use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

use crate::kernel::{jacobi_combination, Field, GradingError, GradingKind, GradingVector, Scalar};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ConstantsError {
    #[error("missing structure constant {0:?}")]
    Missing(String),
    #[error("unknown structure constant {0:?}")]
    Unknown(String),
    #[error("unknown constants kind {0:?}")]
    Kind(String),
    #[error("bad scalar for {name}: {value:?}")]
    BadScalar { name: String, value: String },
    #[error(transparent)]
    Grading(#[from] GradingError),
}

/// `[H,Q] = rQ`, `{Q,Q} = 2sH`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Z2Constants {
    pub r: Scalar,
    pub s: Scalar,
}

/// `{Qi,Qj} = d_k |ε_ijk| Q_k`, `[H,Qi] = b_i Q_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgebraConstants {
    pub d: [Scalar; 3],
    pub b: [Scalar; 3],
}

/// `[H,Qi] = a_i Qi`, `[H,Z] = bZ`, `[Q1,Q2] = cZ`, `{Qi,Qi} = α_i H`,
/// `{Z,Q1} = β1 Q2`, `{Z,Q2} = β2 Q1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SuperalgebraConstants {
    pub a: [Scalar; 2],
    pub b: Scalar,
    pub c: Scalar,
    pub alpha: [Scalar; 2],
    pub beta: [Scalar; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Constants {
    Z2(Z2Constants),
    Algebra(AlgebraConstants),
    Superalgebra(SuperalgebraConstants),
}

fn s(v: i64) -> Scalar {
    Scalar::int(v)
}

impl Z2Constants {
    pub fn new(r: Scalar, s: Scalar) -> Self {
        Z2Constants { r, s }
    }
}

impl AlgebraConstants {
    pub fn new(d: [Scalar; 3], b: [Scalar; 3]) -> Self {
        AlgebraConstants { d, b }
    }

    pub fn from_ints(d: [i64; 3], b: [i64; 3]) -> Self {
        AlgebraConstants { d: d.map(s), b: b.map(s) }
    }

    pub fn zero() -> Self {
        Self::from_ints([0; 3], [0; 3])
    }

    pub const NAMES: [&'static str; 6] = ["d1", "d2", "d3", "b1", "b2", "b3"];

    pub fn values(&self) -> [Scalar; 6] {
        let [d1, d2, d3] = self.d.clone();
        let [b1, b2, b3] = self.b.clone();
        [d1, d2, d3, b1, b2, b3]
    }

    pub fn from_values(v: [Scalar; 6]) -> Self {
        let [d1, d2, d3, b1, b2, b3] = v;
        AlgebraConstants { d: [d1, d2, d3], b: [b1, b2, b3] }
    }

    /// The three residuals d1(b1−b2−b3), d2(b2−b3−b1), d3(b3−b1−b2).
    pub fn residuals(&self) -> [Scalar; 3] {
        let [b1, b2, b3] = &self.b;
        [
            &self.d[0] * &(b1 - b2 - b3),
            &self.d[1] * &(b2 - b3 - b1),
            &self.d[2] * &(b3 - b1 - b2),
        ]
    }

    pub fn is_admissible(&self) -> bool {
        self.residuals().iter().all(Scalar::is_zero)
    }

    pub fn is_real(&self) -> bool {
        self.values().iter().all(Scalar::is_real)
    }
}

impl SuperalgebraConstants {
    pub const NAMES: [&'static str; 8] = ["a1", "a2", "b", "c", "beta1", "beta2", "alpha1", "alpha2"];

    /// Values in table column order a1, a2, b, c, β1, β2, α1, α2.
    pub fn values(&self) -> [Scalar; 8] {
        [
            self.a[0].clone(),
            self.a[1].clone(),
            self.b.clone(),
            self.c.clone(),
            self.beta[0].clone(),
            self.beta[1].clone(),
            self.alpha[0].clone(),
            self.alpha[1].clone(),
        ]
    }

    pub fn from_values(v: [Scalar; 8]) -> Self {
        let [a1, a2, b, c, beta1, beta2, alpha1, alpha2] = v;
        SuperalgebraConstants { a: [a1, a2], b, c, alpha: [alpha1, alpha2], beta: [beta1, beta2] }
    }

    pub fn from_ints(v: [i64; 8]) -> Self {
        Self::from_values(v.map(s))
    }

    pub fn zero() -> Self {
        Self::from_ints([0; 8])
    }

    /// The eight classical residuals, one per generator triple:
    /// (H,Q1,Q2), (H,Q1,Z), (H,Q2,Z), (Q1,Q1,Q2), (Q2,Q2,Q1), (Q1,Q1,Z), (Q2,Q2,Z), (Q1,Q2,Z).
    pub fn residuals(&self) -> [Scalar; 8] {
        let [a1, a2] = &self.a;
        let [al1, al2] = &self.alpha;
        let [be1, be2] = &self.beta;
        let (b, c) = (&self.b, &self.c);
        [
            c * &(b - a1 - a2),
            be1 * &(a2 - a1 - b),
            be2 * &(a1 - a2 - b),
            c * be1 - al1 * a2,
            c * be2 + al2 * a1,
            c * be1 - al1 * b,
            c * be2 + al2 * b,
            be1 * al2 - al1 * be2,
        ]
    }

    /// Constraints of the graded Jacobi identity that the eight-term list
    /// above does not contain: the triples (H,Qi,Qi) and (Qi,Qi,Qi) force
    /// α_i a_i = 0.
    pub fn extra_residuals(&self) -> [Scalar; 2] {
        [&self.alpha[0] * &self.a[0], &self.alpha[1] * &self.a[1]]
    }

    /// Admissible for classification: the eight listed residuals and the two
    /// extra ones vanish.
    pub fn is_admissible(&self) -> bool {
        self.residuals().iter().chain(self.extra_residuals().iter()).all(Scalar::is_zero)
    }

    /// Residuals of the graded Jacobi identity derived directly from the
    /// bracket relations. Triples with a repeated fermionic generator pick up
    /// a factor 2 from (Q,(Q,X)) = ½((Q,Q),X); these differ from
    /// [`Self::residuals`] in rows 4–7.
    pub fn graded_jacobi_residuals(&self) -> [Scalar; 10] {
        let [a1, a2] = &self.a;
        let [al1, al2] = &self.alpha;
        let [be1, be2] = &self.beta;
        let (b, c) = (&self.b, &self.c);
        let two = s(2);
        let cb1 = &two * &(c * be1);
        let cb2 = &two * &(c * be2);
        [
            c * &(b - a1 - a2),
            be1 * &(a2 - a1 - b),
            be2 * &(a1 - a2 - b),
            &cb1 - &(al1 * a2),
            &cb2 + &(al2 * a1),
            &cb1 - &(al1 * b),
            &cb2 + &(al2 * b),
            be1 * al2 - al1 * be2,
            al1 * a1,
            al2 * a2,
        ]
    }

    pub fn satisfies_graded_jacobi(&self) -> bool {
        self.graded_jacobi_residuals().iter().all(Scalar::is_zero)
    }

    pub fn is_real(&self) -> bool {
        self.values().iter().all(Scalar::is_real)
    }
}

/// Generator basis H, X1, X2, X3 with gradings 00, 10, 01, 11 (X = Q for
/// algebras, X3 = Z for superalgebras); `table[i][j]` is the coordinate
/// vector of the bracket (g_i, g_j).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketTable {
    pub kind: GradingKind,
    pub table: [[[Scalar; 4]; 4]; 4],
}

pub const BASIS_GRADINGS: [GradingVector; 4] =
    [GradingVector::G00, GradingVector::G10, GradingVector::G01, GradingVector::G11];

impl BracketTable {
    fn empty(kind: GradingKind) -> Self {
        BracketTable { kind, table: std::array::from_fn(|_| std::array::from_fn(|_| std::array::from_fn(|_| Scalar::zero()))) }
    }

    /// Set (g_i, g_j) = coef·g_k and fill (g_j, g_i) by graded antisymmetry
    /// (B,A) = −(−1)^{α·β}(A,B).
    fn set(&mut self, i: usize, j: usize, coef: &Scalar, k: usize) {
        let sign = crate::kernel::sign_i32(self.kind, &BASIS_GRADINGS[i], &BASIS_GRADINGS[j]);
        self.table[i][j][k] = coef.clone();
        self.table[j][i][k] = if sign == 1 { -coef } else { coef.clone() };
    }

    pub fn algebra(c: &AlgebraConstants) -> Self {
        let mut t = Self::empty(GradingKind::Z2Z2Algebra);
        for i in 0..3 {
            t.set(0, i + 1, &c.b[i], i + 1);
        }
        t.set(1, 2, &c.d[2], 3);
        t.set(2, 3, &c.d[0], 1);
        t.set(3, 1, &c.d[1], 2);
        t
    }

    pub fn superalgebra(c: &SuperalgebraConstants) -> Self {
        let mut t = Self::empty(GradingKind::Z2Z2Superalgebra);
        t.set(0, 1, &c.a[0], 1);
        t.set(0, 2, &c.a[1], 2);
        t.set(0, 3, &c.b, 3);
        t.set(1, 2, &c.c, 3);
        t.set(1, 1, &c.alpha[0], 0);
        t.set(2, 2, &c.alpha[1], 0);
        t.set(3, 1, &c.beta[0], 2);
        t.set(3, 2, &c.beta[1], 1);
        t
    }

    /// Bilinear bracket of two arbitrary vectors (no homogeneity needed).
    pub fn bracket(&self, x: &[Scalar; 4], y: &[Scalar; 4]) -> [Scalar; 4] {
        let mut out: [Scalar; 4] = std::array::from_fn(|_| Scalar::zero());
        for i in 0..4 {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..4 {
                if y[j].is_zero() {
                    continue;
                }
                let xy = &x[i] * &y[j];
                for k in 0..4 {
                    if !self.table[i][j][k].is_zero() {
                        out[k] += &(&xy * &self.table[i][j][k]);
                    }
                }
            }
        }
        out
    }

    /// Graded Jacobi residual vectors for every ordered triple of basis
    /// generators, keyed by the triple.
    pub fn jacobi_residuals(&self) -> Vec<((usize, usize, usize), [Scalar; 4])> {
        let unit = |i: usize| -> [Scalar; 4] { std::array::from_fn(|k| if k == i { Scalar::one() } else { Scalar::zero() }) };
        let mut out = Vec::new();
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    let (ei, ej, ek) = (unit(i), unit(j), unit(k));
                    let terms = jacobi_combination::<_, GradingError, _>(
                        self.kind,
                        [(&ei, BASIS_GRADINGS[i]), (&ej, BASIS_GRADINGS[j]), (&ek, BASIS_GRADINGS[k])],
                        |x, _, y, _| Ok(self.bracket(x, y)),
                    )
                    .expect("basis gradings have the right arity");
                    let mut r: [Scalar; 4] = std::array::from_fn(|_| Scalar::zero());
                    for (sg, v) in terms {
                        for q in 0..4 {
                            if sg == 1 {
                                r[q] += &v[q];
                            } else {
                                r[q] -= &v[q];
                            }
                        }
                    }
                    out.push(((i, j, k), r));
                }
            }
        }
        out
    }

    pub fn satisfies_jacobi(&self) -> bool {
        self.jacobi_residuals().iter().all(|(_, v)| v.iter().all(Scalar::is_zero))
    }
}

impl Constants {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Constants::Z2(_) => "z2",
            Constants::Algebra(_) => "algebra",
            Constants::Superalgebra(_) => "superalgebra",
        }
    }

    pub fn named_values(&self) -> Vec<(&'static str, Scalar)> {
        match self {
            Constants::Z2(c) => vec![("r", c.r.clone()), ("s", c.s.clone())],
            Constants::Algebra(c) => AlgebraConstants::NAMES.iter().copied().zip(c.values()).collect(),
            Constants::Superalgebra(c) => SuperalgebraConstants::NAMES.iter().copied().zip(c.values()).collect(),
        }
    }

    /// Residuals as listed for the kind, each with a short name.
    pub fn residuals(&self) -> Vec<(String, Scalar)> {
        match self {
            Constants::Z2(c) => vec![("r*s".into(), &c.r * &c.s)],
            Constants::Algebra(c) => {
                let n = ["d1(b1-b2-b3)", "d2(b2-b3-b1)", "d3(b3-b1-b2)"];
                n.iter().map(|s| s.to_string()).zip(c.residuals()).collect()
            }
            Constants::Superalgebra(c) => {
                let n = [
                    "c(b-a1-a2)",
                    "beta1(a2-a1-b)",
                    "beta2(a1-a2-b)",
                    "c*beta1-alpha1*a2",
                    "c*beta2+alpha2*a1",
                    "c*beta1-alpha1*b",
                    "c*beta2+alpha2*b",
                    "beta1*alpha2-alpha1*beta2",
                    "alpha1*a1",
                    "alpha2*a2",
                ];
                let vals = c.residuals().into_iter().chain(c.extra_residuals());
                n.iter().map(|s| s.to_string()).zip(vals).collect()
            }
        }
    }

    pub fn to_json(&self, field: Field) -> ConstantsRecord {
        ConstantsRecord {
            kind: self.kind_name().to_string(),
            field,
            values: self.named_values().into_iter().map(|(k, v)| (k.to_string(), v.render())).collect(),
        }
    }
}

/// Wire form `{"kind": ..., "field": "R"|"C", "values": {name: "p/q"}}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ConstantsRecord {
    pub kind: String,
    pub field: Field,
    pub values: BTreeMap<String, String>,
}

impl ConstantsRecord {
    pub fn parse(&self) -> Result<Constants, ConstantsError> {
        let names: &[&str] = match self.kind.as_str() {
            "z2" => &["r", "s"],
            "algebra" => &AlgebraConstants::NAMES,
            "superalgebra" => &SuperalgebraConstants::NAMES,
            other => return Err(ConstantsError::Kind(other.to_string())),
        };
        for k in self.values.keys() {
            if !names.contains(&k.as_str()) {
                return Err(ConstantsError::Unknown(k.clone()));
            }
        }
        let mut vals = Vec::with_capacity(names.len());
        for n in names {
            let raw = self.values.get(*n).ok_or_else(|| ConstantsError::Missing(n.to_string()))?;
            let v: Scalar = raw
                .parse()
                .map_err(|_| ConstantsError::BadScalar { name: n.to_string(), value: raw.clone() })?;
            vals.push(v);
        }
        Ok(match self.kind.as_str() {
            "z2" => Constants::Z2(Z2Constants::new(vals[0].clone(), vals[1].clone())),
            "algebra" => Constants::Algebra(AlgebraConstants::from_values(vals.try_into().unwrap())),
            _ => Constants::Superalgebra(SuperalgebraConstants::from_values(vals.try_into().unwrap())),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residual_examples() {
        let c = AlgebraConstants::from_ints([1, 1, 1], [1, 0, 0]);
        assert_eq!(c.residuals(), [s(1), s(-1), s(-1)]);
        let c = SuperalgebraConstants::from_ints([1, 0, 0, 1, 0, 0, 0, 0]);
        assert_eq!(c.residuals()[0], s(-1));
    }

    #[test]
    fn generic_jacobi_matches_algebra_residuals() {
        // brute force over small integer constants: the graded Jacobi identity
        // holds exactly when the three printed residuals vanish
        let vals = [-1i64, 0, 1, 2];
        for d1 in vals {
            for d3 in vals {
                for b1 in vals {
                    for b2 in vals {
                        for b3 in [0i64, 1, 3] {
                            let c = AlgebraConstants::from_ints([d1, 1, d3], [b1, b2, b3]);
                            assert_eq!(BracketTable::algebra(&c).satisfies_jacobi(), c.is_admissible(), "{c:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn eight_residuals_miss_alpha_a_constraint() {
        // a1 ≠ 0 and α1 ≠ 0 alone: every one of the eight residuals vanishes
        let c = SuperalgebraConstants::from_ints([1, 0, 0, 0, 0, 0, 1, 0]);
        assert!(c.residuals().iter().all(Scalar::is_zero));
        assert!(!BracketTable::superalgebra(&c).satisfies_jacobi());
        assert!(!c.is_admissible());
    }

    #[test]
    fn repeated_fermion_triples_carry_factor_two() {
        // a2 = b = c = 1, β1 = α1 = 1 zeroes the eight listed residuals but
        // not the graded Jacobi identity; α1 = 2 does the opposite
        let listed = SuperalgebraConstants::from_ints([0, 1, 1, 1, 1, 0, 1, 0]);
        assert!(listed.is_admissible());
        assert!(!BracketTable::superalgebra(&listed).satisfies_jacobi());
        let derived = SuperalgebraConstants::from_ints([0, 1, 1, 1, 1, 0, 2, 0]);
        assert!(!derived.is_admissible());
        assert!(BracketTable::superalgebra(&derived).satisfies_jacobi());
    }

    #[test]
    fn generic_jacobi_matches_full_superalgebra_residuals() {
        let vals = [-1i64, 0, 1];
        let mut count = 0;
        for a1 in vals {
            for a2 in vals {
                for b in [0i64, 1] {
                    for c in vals {
                        for be1 in vals {
                            for be2 in [0i64, 1] {
                                for al1 in vals {
                                    for al2 in [0i64, 1] {
                                        let k = SuperalgebraConstants::from_ints([a1, a2, b, c, be1, be2, al1, al2]);
                                        let full = BracketTable::superalgebra(&k).satisfies_jacobi();
                                        assert_eq!(full, k.satisfies_graded_jacobi(), "{k:?}");
                                        count += full as usize;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        assert!(count > 10);
    }

    #[test]
    fn json_record_roundtrip() {
        let c = Constants::Algebra(AlgebraConstants::from_ints([0, 0, 5], [2, 3, 5]));
        let rec = c.to_json(Field::Real);
        let txt = serde_json::to_string(&rec).unwrap();
        let back: ConstantsRecord = serde_json::from_str(&txt).unwrap();
        assert_eq!(back.parse().unwrap(), c);
    }
}
