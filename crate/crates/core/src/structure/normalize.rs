use serde::Serialize;
use thiserror::Error;

use super::constants::{AlgebraConstants, Constants, SuperalgebraConstants, Z2Constants};
use super::label::{table_entry, Family, TableLabel};
use super::witness::{
    apply_algebra, apply_equivalence, apply_superalgebra, EquivalenceWitness, ALGEBRA_PERMS, SUPERALGEBRA_PERMS,
};
use crate::kernel::{Field, Scalar};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum NormalizeError {
    #[error("constants violate the graded Jacobi identity: {}", render_residuals(.0))]
    Inadmissible(Vec<(String, Scalar)>),
    #[error("non-real structure constants in R-mode")]
    NotReal,
    #[error("no canonical form found (internal error) for {0}")]
    NoCanonicalForm(String),
}

fn render_residuals(r: &[(String, Scalar)]) -> String {
    r.iter().map(|(n, v)| format!("{n} = {v}")).collect::<Vec<_>>().join(", ")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Normalized {
    pub label: TableLabel,
    pub witness: EquivalenceWitness,
}

fn nonzero_residuals(c: &Constants) -> Vec<(String, Scalar)> {
    c.residuals().into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// ε for a product whose sign must be preserved: the real sign in ℝ-mode,
/// always +1 in ℂ-mode (a square root of the product absorbs it).
fn eps_of(x: &Scalar, field: Field) -> i8 {
    match field {
        Field::Complex => 1,
        Field::Real => {
            if x.is_negative_real() {
                -1
            } else {
                1
            }
        }
    }
}

fn es(e: i8) -> Scalar {
    Scalar::int(e as i64)
}

/// Fill unspecified multipliers with the first specified one (or 1), so
/// that all share one sign whenever the specified ones do.
fn fill(rho: [Option<Scalar>; 3]) -> [Scalar; 3] {
    let dflt = rho.iter().flatten().next().cloned().unwrap_or_else(Scalar::one);
    rho.map(|r| r.unwrap_or_else(|| dflt.clone()))
}

pub fn classify_z2(c: &Z2Constants, field: Field) -> Result<Normalized, NormalizeError> {
    let k = Constants::Z2(c.clone());
    let bad = nonzero_residuals(&k);
    if !bad.is_empty() {
        return Err(NormalizeError::Inadmissible(bad));
    }
    if field == Field::Real && !(c.r.is_real() && c.s.is_real()) {
        return Err(NormalizeError::NotReal);
    }
    let (family, lambda_h) = if c.r.is_zero() && c.s.is_zero() {
        (Family::Z2I, Scalar::one())
    } else if c.r.is_zero() {
        // {Q,Q} = 2sH becomes 2H' with H' = sH
        (Family::Z2II, c.s.clone())
    } else {
        (Family::Z2III, c.r.inv().unwrap())
    };
    Ok(Normalized { label: TableLabel::new(family), witness: EquivalenceWitness { lambda_h, ..EquivalenceWitness::identity() } })
}

/// Canonical scaling for algebra constants whose sector labeling is already
/// fixed. Returns `None` when this labeling is not the one matching a row.
fn canon_algebra(c: &AlgebraConstants, field: Field) -> Option<(TableLabel, EquivalenceWitness)> {
    let nz = c.d.clone().map(|x| !x.is_zero());
    let [b1, b2, b3] = &c.b;
    let id = [0, 1, 2];
    let one = Scalar::one;
    match nz {
        [false, false, false] => {
            if c.b.iter().all(Scalar::is_zero) {
                return Some((TableLabel::new(Family::A(7)), EquivalenceWitness::identity()));
            }
            let lh = b3.inv()?;
            let label = TableLabel::with_params(Family::A(8), vec![b1 * &lh, b2 * &lh]);
            Some((label, EquivalenceWitness::from_multipliers(lh, [one(), one(), one()], id)))
        }
        [false, false, true] => {
            let m = c.d[2].inv()?;
            let mu = [m.clone(), m.clone(), m];
            if c.b.iter().all(Scalar::is_zero) {
                Some((TableLabel::new(Family::A(4)), EquivalenceWitness::from_multipliers(one(), mu, id)))
            } else if b3.is_zero() {
                let lh = b1.inv()?;
                Some((TableLabel::new(Family::A(5)), EquivalenceWitness::from_multipliers(lh, mu, id)))
            } else {
                let lh = b3.inv()?;
                let x = &Scalar::frac(1, 2) - &(b1 * &lh);
                Some((TableLabel::with_params(Family::A(6), vec![x]), EquivalenceWitness::from_multipliers(lh, mu, id)))
            }
        }
        [false, true, true] => {
            let e = eps_of(&(&c.d[1] * &c.d[2]), field);
            let m3 = c.d[2].inv()?;
            let mu = [m3.clone(), &es(e) / &c.d[1], m3];
            if c.b.iter().all(Scalar::is_zero) {
                Some((TableLabel::with_eps(Family::A(2), e), EquivalenceWitness::from_multipliers(one(), mu, id)))
            } else {
                let lh = b2.inv()?;
                Some((TableLabel::with_eps(Family::A(3), e), EquivalenceWitness::from_multipliers(lh, mu, id)))
            }
        }
        [true, true, true] => {
            if field == Field::Real && c.d[1].sign() != c.d[2].sign() {
                return None;
            }
            let e = eps_of(&(&c.d[0] * &c.d[1]), field);
            let mu = [&es(e) / &c.d[0], c.d[1].inv()?, c.d[2].inv()?];
            Some((TableLabel::with_eps(Family::A(1), e), EquivalenceWitness::from_multipliers(one(), mu, id)))
        }
        _ => None,
    }
}

fn superalgebra_witness(lh: Scalar, rho: [Option<Scalar>; 3]) -> EquivalenceWitness {
    EquivalenceWitness::from_multipliers(lh, fill(rho), [0, 1, 2])
}

/// Canonical scaling for superalgebra constants with a fixed assignment of
/// the two fermionic sectors. Multipliers ρ act as c' = cρ₃, β₁' = β₁ρ₂,
/// β₂' = β₂ρ₁, α₁' = α₁ρ₂ρ₃/λ_H, α₂' = α₂ρ₁ρ₃/λ_H.
fn canon_superalgebra(k: &SuperalgebraConstants, field: Field) -> Option<(TableLabel, EquivalenceWitness)> {
    let [a1, a2] = &k.a;
    let [al1, al2] = &k.alpha;
    let [be1, be2] = &k.beta;
    let (b, c) = (&k.b, &k.c);
    let z = |x: &Scalar| x.is_zero();
    let lbl = TableLabel::new;
    let w = superalgebra_witness;

    if z(a1) && z(a2) && z(b) {
        if !z(c) {
            let r3 = c.inv()?;
            return match (z(al1), z(al2)) {
                (true, true) => Some((lbl(Family::S(8)), w(Scalar::one(), [None, None, Some(r3)]))),
                (true, false) => {
                    let lh = &(al2 * &r3) * &r3;
                    Some((lbl(Family::S(9)), w(lh, [None, None, Some(r3)])))
                }
                (false, false) => {
                    let e = eps_of(&(al1 * al2), field);
                    let r1 = r3.clone();
                    let lh = &(al2 * &r1) * &r3;
                    let r2 = &(&(&es(e) * al2) * &r1) / al1;
                    Some((TableLabel::with_eps(Family::S(10), e), w(lh, [Some(r1), Some(r2), Some(r3)])))
                }
                (false, true) => None,
            };
        }
        return match (z(be1), z(be2)) {
            (true, true) => match (z(al1), z(al2)) {
                (true, true) => Some((lbl(Family::S(1)), EquivalenceWitness::identity())),
                (true, false) => Some((lbl(Family::S(2)), w(al2.clone(), [None, None, None]))),
                (false, false) => {
                    let e = eps_of(&(al1 * al2), field);
                    let r2 = &(&es(e) * al2) / al1;
                    Some((TableLabel::with_eps(Family::S(3), e), w(al2.clone(), [Some(Scalar::one()), Some(r2), None])))
                }
                (false, true) => None,
            },
            (true, false) => {
                let r1 = be2.inv()?;
                if z(al2) {
                    Some((lbl(Family::S(4)), w(Scalar::one(), [Some(r1), None, None])))
                } else {
                    let lh = &(al2 * &r1) * &r1;
                    Some((lbl(Family::S(5)), w(lh, [Some(r1), None, None])))
                }
            }
            (false, false) => {
                let e = eps_of(&(be1 * be2), field);
                let r1 = be2.inv()?;
                let r2 = &es(e) / be1;
                if z(al1) && z(al2) {
                    Some((TableLabel::with_eps(Family::S(6), e), w(Scalar::one(), [Some(r1), Some(r2), None])))
                } else {
                    let lh = &(al2 * &r1) * &r1;
                    Some((TableLabel::with_eps(Family::S(7), e), w(lh, [Some(r1.clone()), Some(r2), Some(r1)])))
                }
            }
            (false, true) => None,
        };
    }

    if z(a1) && z(a2) {
        // only b ≠ 0: everything else is forced to vanish
        return Some((lbl(Family::S(11)), w(b.inv()?, [None, None, None])));
    }

    if z(a1) {
        let lh = a2.inv()?;
        if !z(c) {
            let r3 = c.inv()?;
            if z(al1) {
                return Some((lbl(Family::S(16)), w(lh, [None, None, Some(r3)])));
            }
            let e = eps_of(&(be1 * c), field);
            let r2 = &es(e) / be1;
            return Some((TableLabel::with_eps(Family::S(13), e), w(lh, [Some(r3.clone()), Some(r2), Some(r3)])));
        }
        return match (z(be1), z(be2)) {
            (true, true) => {
                if z(b) {
                    Some((lbl(Family::S(12)), w(lh, [None, None, None])))
                } else {
                    let x = b * &lh;
                    Some((TableLabel::with_params(Family::S(17), vec![x]), w(lh, [None, None, None])))
                }
            }
            (false, true) => Some((lbl(Family::S(15)), w(lh, [None, Some(be1.inv()?), None]))),
            (true, false) => Some((lbl(Family::S(14)), w(lh, [Some(be2.inv()?), None, None]))),
            (false, false) => None,
        };
    }

    let lh = a1.inv()?;
    let y = a2 * &lh;
    if !z(c) {
        if !z(al2) || z(a2) {
            return None;
        }
        return Some((TableLabel::with_params(Family::S(21), vec![y]), w(lh, [None, None, Some(c.inv()?)])));
    }
    match (z(be1), z(be2)) {
        (true, true) => {
            let zz = b * &lh;
            Some((TableLabel::with_params(Family::S(18), vec![y, zz]), w(lh, [None, None, None])))
        }
        (true, false) => Some((TableLabel::with_params(Family::S(19), vec![y]), w(lh, [Some(be2.inv()?), None, None]))),
        (false, false) => {
            let e = eps_of(&(be1 * be2), field);
            let r1 = &es(e) / be2;
            Some((TableLabel::with_eps(Family::S(20), e), w(lh, [Some(r1), Some(be1.inv()?), None])))
        }
        (false, true) => None,
    }
}

fn pick_best(cands: Vec<Normalized>) -> Option<Normalized> {
    // candidates arrive in lexicographic permutation order; keep the first
    // among equal labels
    let mut best: Option<Normalized> = None;
    for c in cands {
        let better = match &best {
            None => true,
            Some(b) => c.label.lex_cmp(&b.label) == std::cmp::Ordering::Less,
        };
        if better {
            best = Some(c);
        }
    }
    best
}

fn accept(input: &Constants, label: TableLabel, witness: EquivalenceWitness, field: Field, superalgebra: bool) -> Option<Normalized> {
    witness.validate(superalgebra, field).ok()?;
    label.check_restrictions(field).ok()?;
    let target = table_entry(&label).ok()?;
    let got = apply_equivalence(input, &witness).ok()?;
    (got == target).then_some(Normalized { label, witness })
}

pub fn normalize_algebra(c: &AlgebraConstants, field: Field) -> Result<Normalized, NormalizeError> {
    let k = Constants::Algebra(c.clone());
    let bad = nonzero_residuals(&k);
    if !bad.is_empty() {
        return Err(NormalizeError::Inadmissible(bad));
    }
    if field == Field::Real && !c.is_real() {
        return Err(NormalizeError::NotReal);
    }
    let mut cands = Vec::new();
    for perm in ALGEBRA_PERMS {
        let pw = EquivalenceWitness::permutation(perm);
        let permuted = apply_algebra(c, &pw);
        if let Some((label, scale)) = canon_algebra(&permuted, field) {
            if let Some(n) = accept(&k, label, scale.compose(&pw), field, false) {
                cands.push(n);
            }
        }
    }
    pick_best(cands).ok_or_else(|| NormalizeError::NoCanonicalForm(format!("{c:?}")))
}

pub fn normalize_superalgebra(c: &SuperalgebraConstants, field: Field) -> Result<Normalized, NormalizeError> {
    let k = Constants::Superalgebra(c.clone());
    let bad = nonzero_residuals(&k);
    if !bad.is_empty() {
        return Err(NormalizeError::Inadmissible(bad));
    }
    if field == Field::Real && !c.is_real() {
        return Err(NormalizeError::NotReal);
    }
    let mut cands = Vec::new();
    for perm in SUPERALGEBRA_PERMS {
        let pw = EquivalenceWitness::permutation(perm);
        let permuted = apply_superalgebra(c, &pw);
        if let Some((label, scale)) = canon_superalgebra(&permuted, field) {
            if let Some(n) = accept(&k, label, scale.compose(&pw), field, true) {
                cands.push(n);
            }
        }
    }
    pick_best(cands).ok_or_else(|| NormalizeError::NoCanonicalForm(format!("{c:?}")))
}

pub fn normalize(c: &Constants, field: Field) -> Result<Normalized, NormalizeError> {
    match c {
        Constants::Z2(z) => classify_z2(z, field),
        Constants::Algebra(a) => normalize_algebra(a, field),
        Constants::Superalgebra(s) => normalize_superalgebra(s, field),
    }
}
