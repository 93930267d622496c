use serde::Serialize;
use thiserror::Error;

use super::constants::{AlgebraConstants, Constants, SuperalgebraConstants, Z2Constants};
use crate::kernel::{Field, Scalar};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum WitnessError {
    #[error("rescaling factors must be nonzero")]
    ZeroRescaling,
    #[error("squared-rescaling certificate fails: prod² ≠ Πλᵢ²")]
    Certificate,
    #[error("rescaling is not real with positive squares, as ℝ-mode requires")]
    NotReal,
    #[error("permutation {0:?} is not legal for this kind")]
    Permutation([usize; 3]),
}

/// Equivalence of presentations: rescale `H → λ_H H`, `X_i → λ_i X_i`, then
/// relabel sectors so that old generator `i` becomes new generator `perm[i]`.
///
/// The individual λ_i may be irrational; only λ_i² and the product λ₁λ₂λ₃
/// enter the action on structure constants, so those are stored. The pair is
/// a valid certificate iff `lambda_prod² = Π lambda_sq`, which guarantees
/// some choice of square roots realizes it (real ones in ℝ-mode when every
/// λ_i² > 0). For ℤ₂ constants only `lambda_h` and `lambda_sq[0]` matter.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct EquivalenceWitness {
    pub lambda_h: Scalar,
    pub lambda_sq: [Scalar; 3],
    pub lambda_prod: Scalar,
    pub perm: [usize; 3],
}

pub const ALGEBRA_PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
pub const SUPERALGEBRA_PERMS: [[usize; 3]; 2] = [[0, 1, 2], [1, 0, 2]];

fn invert_perm(p: [usize; 3]) -> [usize; 3] {
    let mut q = [0; 3];
    for i in 0..3 {
        q[p[i]] = i;
    }
    q
}

impl EquivalenceWitness {
    pub fn identity() -> Self {
        EquivalenceWitness {
            lambda_h: Scalar::one(),
            lambda_sq: [Scalar::one(), Scalar::one(), Scalar::one()],
            lambda_prod: Scalar::one(),
            perm: [0, 1, 2],
        }
    }

    pub fn permutation(perm: [usize; 3]) -> Self {
        EquivalenceWitness { perm, ..Self::identity() }
    }

    /// Rescalings with rational λ_i.
    pub fn from_lambdas(lambda_h: Scalar, l: [Scalar; 3], perm: [usize; 3]) -> Self {
        let lambda_prod = &(&l[0] * &l[1]) * &l[2];
        EquivalenceWitness { lambda_h, lambda_sq: l.map(|x| &x * &x), lambda_prod, perm }
    }

    /// The rescaling whose induced multipliers on the "odd-odd" constants are
    /// `mu`: μ_i = λ₁λ₂λ₃/λ_i². Always a valid certificate; real with
    /// positive squares iff all μ_i are real of one sign.
    pub fn from_multipliers(lambda_h: Scalar, mu: [Scalar; 3], perm: [usize; 3]) -> Self {
        let lambda_sq = [&mu[1] * &mu[2], &mu[0] * &mu[2], &mu[0] * &mu[1]];
        let lambda_prod = &(&mu[0] * &mu[1]) * &mu[2];
        EquivalenceWitness { lambda_h, lambda_sq, lambda_prod, perm }
    }

    /// Multipliers μ_i = prod / λ_i².
    pub fn multipliers(&self) -> [Scalar; 3] {
        std::array::from_fn(|i| &self.lambda_prod / &self.lambda_sq[i])
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// Legality for an algebra/superalgebra witness over `field`.
    pub fn validate(&self, superalgebra: bool, field: Field) -> Result<(), WitnessError> {
        if self.lambda_h.is_zero() || self.lambda_prod.is_zero() || self.lambda_sq.iter().any(Scalar::is_zero) {
            return Err(WitnessError::ZeroRescaling);
        }
        let sq_prod = &(&self.lambda_sq[0] * &self.lambda_sq[1]) * &self.lambda_sq[2];
        if &self.lambda_prod * &self.lambda_prod != sq_prod {
            return Err(WitnessError::Certificate);
        }
        if field == Field::Real
            && (!self.lambda_h.is_real()
                || !self.lambda_prod.is_real()
                || !self.lambda_sq.iter().all(Scalar::is_positive_real))
        {
            return Err(WitnessError::NotReal);
        }
        let legal: &[[usize; 3]] = if superalgebra { &SUPERALGEBRA_PERMS } else { &ALGEBRA_PERMS };
        if !legal.contains(&self.perm) {
            return Err(WitnessError::Permutation(self.perm));
        }
        Ok(())
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn compose(&self, first: &EquivalenceWitness) -> EquivalenceWitness {
        // A relabeling followed by a rescaling equals the conjugated rescaling
        // (indices pulled back through the relabeling) followed by it.
        let p = first.perm;
        let pulled: [Scalar; 3] = std::array::from_fn(|i| self.lambda_sq[p[i]].clone());
        EquivalenceWitness {
            lambda_h: &first.lambda_h * &self.lambda_h,
            lambda_sq: std::array::from_fn(|i| &first.lambda_sq[i] * &pulled[i]),
            lambda_prod: &first.lambda_prod * &self.lambda_prod,
            perm: std::array::from_fn(|i| self.perm[p[i]]),
        }
    }

    pub fn inverse(&self) -> EquivalenceWitness {
        let q = invert_perm(self.perm);
        EquivalenceWitness {
            lambda_h: self.lambda_h.inv().expect("nonzero λ_H"),
            lambda_sq: std::array::from_fn(|i| self.lambda_sq[q[i]].inv().expect("nonzero λ²")),
            lambda_prod: self.lambda_prod.inv().expect("nonzero product"),
            perm: q,
        }
    }
}

pub fn apply_algebra(c: &AlgebraConstants, w: &EquivalenceWitness) -> AlgebraConstants {
    let mu = w.multipliers();
    let d: [Scalar; 3] = std::array::from_fn(|i| &c.d[i] * &mu[i]);
    let b: [Scalar; 3] = std::array::from_fn(|i| &c.b[i] * &w.lambda_h);
    let mut out = AlgebraConstants::zero();
    for i in 0..3 {
        out.d[w.perm[i]] = d[i].clone();
        out.b[w.perm[i]] = b[i].clone();
    }
    out
}

pub fn apply_superalgebra(c: &SuperalgebraConstants, w: &EquivalenceWitness) -> SuperalgebraConstants {
    let lh = &w.lambda_h;
    let sq = &w.lambda_sq;
    let prod = &w.lambda_prod;
    let mut out = SuperalgebraConstants {
        a: [&c.a[0] * lh, &c.a[1] * lh],
        b: &c.b * lh,
        c: &c.c * &(prod / &sq[2]),
        alpha: [&(&c.alpha[0] * &sq[0]) / lh, &(&c.alpha[1] * &sq[1]) / lh],
        beta: [&c.beta[0] * &(prod / &sq[1]), &c.beta[1] * &(prod / &sq[0])],
    };
    if w.perm[0] == 1 {
        // Q1 ↔ Q2; [Q1,Q2] is a commutator, so its constant changes sign.
        out.a.swap(0, 1);
        out.alpha.swap(0, 1);
        out.beta.swap(0, 1);
        out.c = -&out.c;
    }
    out
}

pub fn apply_z2(c: &Z2Constants, w: &EquivalenceWitness) -> Z2Constants {
    Z2Constants { r: &c.r * &w.lambda_h, s: &(&c.s * &w.lambda_sq[0]) / &w.lambda_h }
}

pub fn apply_equivalence(c: &Constants, w: &EquivalenceWitness) -> Result<Constants, WitnessError> {
    if w.lambda_h.is_zero() || w.lambda_sq.iter().any(Scalar::is_zero) || w.lambda_prod.is_zero() {
        return Err(WitnessError::ZeroRescaling);
    }
    Ok(match c {
        Constants::Z2(z) => {
            if w.perm != [0, 1, 2] {
                return Err(WitnessError::Permutation(w.perm));
            }
            Constants::Z2(apply_z2(z, w))
        }
        Constants::Algebra(a) => {
            if !ALGEBRA_PERMS.contains(&w.perm) {
                return Err(WitnessError::Permutation(w.perm));
            }
            Constants::Algebra(apply_algebra(a, w))
        }
        Constants::Superalgebra(s) => {
            if !SUPERALGEBRA_PERMS.contains(&w.perm) {
                return Err(WitnessError::Permutation(w.perm));
            }
            Constants::Superalgebra(apply_superalgebra(s, w))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::constants::BracketTable;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::frac(n, d)
    }

    /// Independent oracle: build the relabeled/rescaled generators explicitly
    /// as vectors in the old basis, compute their brackets with the old table
    /// and read off the new constants.
    fn brute_force_algebra(c: &AlgebraConstants, lh: Scalar, l: [Scalar; 3], perm: [usize; 3]) -> AlgebraConstants {
        let t = BracketTable::algebra(c);
        let mut newgen: Vec<[Scalar; 4]> = vec![std::array::from_fn(|k| if k == 0 { lh.clone() } else { Scalar::zero() })];
        for new in 0..3 {
            let old = (0..3).find(|&i| perm[i] == new).unwrap();
            newgen.push(std::array::from_fn(|k| if k == old + 1 { l[old].clone() } else { Scalar::zero() }));
        }
        // express a vector that is a multiple of a single new generator
        let coef = |v: &[Scalar; 4], g: usize| -> Scalar {
            let k = (0..4).find(|&k| !newgen[g][k].is_zero()).unwrap();
            &v[k] / &newgen[g][k]
        };
        let mut out = AlgebraConstants::zero();
        for i in 0..3 {
            out.b[i] = coef(&t.bracket(&newgen[0], &newgen[i + 1]), i + 1);
        }
        out.d[2] = coef(&t.bracket(&newgen[1], &newgen[2]), 3);
        out.d[0] = coef(&t.bracket(&newgen[2], &newgen[3]), 1);
        out.d[1] = coef(&t.bracket(&newgen[3], &newgen[1]), 2);
        out
    }

    #[test]
    fn algebra_action_matches_brute_force() {
        let c = AlgebraConstants::new([q(2, 1), q(-3, 2), q(5, 1)], [q(1, 3), q(7, 1), q(-2, 5)]);
        for perm in ALGEBRA_PERMS {
            let l = [q(2, 1), q(-1, 3), q(5, 7)];
            let w = EquivalenceWitness::from_lambdas(q(3, 4), l.clone(), perm);
            assert_eq!(apply_algebra(&c, &w), brute_force_algebra(&c, q(3, 4), l, perm), "{perm:?}");
        }
    }

    #[test]
    fn cycle_relocates_d3() {
        let c = AlgebraConstants::from_ints([0, 0, 1], [0, 0, 0]);
        // cycle 10 → 01 → 11 → 10: old Q3 becomes new Q1
        let w = EquivalenceWitness::permutation([1, 2, 0]);
        assert_eq!(apply_algebra(&c, &w), AlgebraConstants::from_ints([1, 0, 0], [0, 0, 0]));
    }

    #[test]
    fn superalgebra_swap_examples() {
        let s12 = SuperalgebraConstants::from_ints([0, 1, 0, 0, 0, 0, 0, 0]);
        let w = EquivalenceWitness::permutation([1, 0, 2]);
        assert_eq!(apply_superalgebra(&s12, &w), SuperalgebraConstants::from_ints([1, 0, 0, 0, 0, 0, 0, 0]));
        let c = SuperalgebraConstants::from_ints([0, 0, 0, 1, 0, 0, 0, 0]);
        assert_eq!(apply_superalgebra(&c, &w).c, Scalar::int(-1));
    }

    #[test]
    fn superalgebra_swap_preserves_jacobi() {
        let c = SuperalgebraConstants::from_ints([0, 1, 1, 1, 1, 0, 2, 0]);
        assert!(BracketTable::superalgebra(&c).satisfies_jacobi());
        let swapped = apply_superalgebra(&c, &EquivalenceWitness::permutation([1, 0, 2]));
        assert!(BracketTable::superalgebra(&swapped).satisfies_jacobi());
        // without the sign flip on c the swapped constants would be inadmissible
        let mut wrong = swapped.clone();
        wrong.c = -&wrong.c;
        assert!(!BracketTable::superalgebra(&wrong).satisfies_jacobi());
    }

    #[test]
    fn z2_witnesses() {
        let c = Z2Constants::new(q(0, 1), q(3, 1));
        let w = EquivalenceWitness { lambda_h: q(3, 1), ..EquivalenceWitness::identity() };
        assert_eq!(apply_z2(&c, &w), Z2Constants::new(q(0, 1), q(1, 1)));
        let c = Z2Constants::new(q(-2, 1), q(0, 1));
        let w = EquivalenceWitness { lambda_h: q(-1, 2), ..EquivalenceWitness::identity() };
        assert_eq!(apply_z2(&c, &w), Z2Constants::new(q(1, 1), q(0, 1)));
    }

    #[test]
    fn certificate_validation() {
        let w = EquivalenceWitness::from_multipliers(q(1, 1), [q(1, 2), q(1, 3), q(1, 5)], [0, 1, 2]);
        assert!(w.validate(false, Field::Real).is_ok());
        let w = EquivalenceWitness::from_multipliers(q(1, 1), [q(-1, 2), q(1, 3), q(1, 5)], [0, 1, 2]);
        assert_eq!(w.validate(false, Field::Real), Err(WitnessError::NotReal));
        assert!(w.validate(false, Field::Complex).is_ok());
        let mut w = EquivalenceWitness::identity();
        w.lambda_prod = q(2, 1);
        assert_eq!(w.validate(false, Field::Complex), Err(WitnessError::Certificate));
        assert_eq!(
            EquivalenceWitness::permutation([1, 2, 0]).validate(true, Field::Real),
            Err(WitnessError::Permutation([1, 2, 0]))
        );
    }
}
