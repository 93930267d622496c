//! Constructive sampling of admissible structure constants: pick a branch of
//! the solution of the constraint system, then fill its free entries with
//! small random rationals, then apply a random equivalence.

use rand::Rng;

use super::constants::{AlgebraConstants, Constants, SuperalgebraConstants};
use super::witness::{apply_algebra, apply_superalgebra, EquivalenceWitness, ALGEBRA_PERMS, SUPERALGEBRA_PERMS};
use crate::kernel::{Field, Scalar};

const BOUND: i64 = 20;

fn rational<R: Rng>(rng: &mut R) -> Scalar {
    Scalar::frac(rng.gen_range(-BOUND..=BOUND), rng.gen_range(1..=BOUND))
}

/// Random nonzero scalar with numerators and denominators bounded by 20;
/// Gaussian in ℂ-mode.
pub fn nonzero<R: Rng>(rng: &mut R, field: Field) -> Scalar {
    loop {
        let v = match field {
            Field::Real => rational(rng),
            Field::Complex => {
                let re = rational(rng);
                let im = rational(rng);
                Scalar::new(re.re().clone(), im.re().clone())
            }
        };
        if !v.is_zero() {
            return v;
        }
    }
}

/// Zero with probability 1/3, otherwise a random nonzero scalar.
pub fn maybe<R: Rng>(rng: &mut R, field: Field) -> Scalar {
    if rng.gen_range(0..3) == 0 {
        Scalar::zero()
    } else {
        nonzero(rng, field)
    }
}

fn random_witness<R: Rng>(rng: &mut R, field: Field, perms: &[[usize; 3]]) -> EquivalenceWitness {
    let perm = perms[rng.gen_range(0..perms.len())];
    let lh = nonzero(rng, field);
    let mu = match field {
        Field::Complex => [nonzero(rng, field), nonzero(rng, field), nonzero(rng, field)],
        Field::Real => {
            let sign = if rng.gen_bool(0.5) { Scalar::one() } else { Scalar::int(-1) };
            let mut pos = || {
                let v = nonzero(rng, field);
                if v.is_negative_real() {
                    &sign * &(-v)
                } else {
                    &sign * &v
                }
            };
            [pos(), pos(), pos()]
        }
    };
    EquivalenceWitness::from_multipliers(lh, mu, perm)
}

pub fn random_algebra<R: Rng>(rng: &mut R, field: Field) -> AlgebraConstants {
    let z = Scalar::zero;
    let mut c = AlgebraConstants::zero();
    match rng.gen_range(0..4) {
        0 => c.b = [maybe(rng, field), maybe(rng, field), maybe(rng, field)],
        1 => {
            c.d[2] = nonzero(rng, field);
            let (b1, b2) = (maybe(rng, field), maybe(rng, field));
            c.b = [b1.clone(), b2.clone(), &b1 + &b2];
        }
        2 => {
            c.d[1] = nonzero(rng, field);
            c.d[2] = nonzero(rng, field);
            let t = maybe(rng, field);
            c.b = [z(), t.clone(), t];
        }
        _ => c.d = [nonzero(rng, field), nonzero(rng, field), nonzero(rng, field)],
    }
    let w = random_witness(rng, field, &ALGEBRA_PERMS);
    apply_algebra(&c, &w)
}

pub fn random_superalgebra<R: Rng>(rng: &mut R, field: Field) -> SuperalgebraConstants {
    let mut k = SuperalgebraConstants::zero();
    let nz = |rng: &mut R| nonzero(rng, field);
    let mb = |rng: &mut R| maybe(rng, field);
    match rng.gen_range(0..12) {
        // a = b = 0, c ≠ 0: β = 0
        0 => {
            k.c = nz(rng);
            k.alpha = [mb(rng), mb(rng)];
        }
        // a = b = c = 0, β = 0
        1 => k.alpha = [mb(rng), mb(rng)],
        // one β: the matching α vanishes
        2 => {
            k.beta[1] = nz(rng);
            k.alpha[1] = mb(rng);
        }
        // both β: α ∥ β
        3 => {
            k.beta = [nz(rng), nz(rng)];
            let t = mb(rng);
            k.alpha = [&t * &k.beta[0], &t * &k.beta[1]];
        }
        // only b
        4 => k.b = nz(rng),
        // a1 = 0, a2 ≠ 0, c ≠ 0
        5 => {
            k.a[1] = nz(rng);
            k.b = k.a[1].clone();
            k.c = nz(rng);
            k.alpha[0] = mb(rng);
            k.beta[0] = &(&k.alpha[0] * &k.a[1]) / &k.c;
        }
        // a1 = 0, a2 ≠ 0, c = 0
        6 => {
            k.a[1] = nz(rng);
            match rng.gen_range(0..3) {
                0 => k.b = mb(rng),
                1 => {
                    k.beta[0] = nz(rng);
                    k.b = k.a[1].clone();
                }
                _ => {
                    k.beta[1] = nz(rng);
                    k.b = -&k.a[1];
                }
            }
        }
        // a1 ≠ 0, c ≠ 0, α2 ≠ 0
        7 => {
            k.a[0] = nz(rng);
            k.c = nz(rng);
            k.alpha[1] = nz(rng);
            k.beta[1] = -&(&(&k.alpha[1] * &k.a[0]) / &k.c);
            k.b = k.a[0].clone();
        }
        // a1 ≠ 0, c ≠ 0, α = 0
        8 => {
            k.a = [nz(rng), mb(rng)];
            k.c = nz(rng);
            k.b = &k.a[0] + &k.a[1];
        }
        // a1 ≠ 0, c = 0, β = 0
        9 => {
            k.a = [nz(rng), mb(rng)];
            k.b = mb(rng);
        }
        // a1 ≠ 0, c = 0, one β
        10 => {
            k.a = [nz(rng), mb(rng)];
            if rng.gen_bool(0.5) {
                k.beta[1] = nz(rng);
                k.b = &k.a[0] - &k.a[1];
            } else {
                k.beta[0] = nz(rng);
                k.b = &k.a[1] - &k.a[0];
            }
        }
        // a1 ≠ 0, c = 0, both β
        _ => {
            k.a[0] = nz(rng);
            k.a[1] = k.a[0].clone();
            k.beta = [nz(rng), nz(rng)];
        }
    }
    let w = random_witness(rng, field, &SUPERALGEBRA_PERMS);
    apply_superalgebra(&k, &w)
}

/// Random admissible constants of the requested kind ("algebra" or
/// "superalgebra").
pub fn random_admissible<R: Rng>(rng: &mut R, superalgebra: bool, field: Field) -> Constants {
    if superalgebra {
        Constants::Superalgebra(random_superalgebra(rng, field))
    } else {
        Constants::Algebra(random_algebra(rng, field))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samples_are_admissible() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for field in [Field::Real, Field::Complex] {
            for _ in 0..500 {
                assert!(random_algebra(&mut rng, field).is_admissible());
                let s = random_superalgebra(&mut rng, field);
                assert!(s.is_admissible(), "{s:?}");
                if field == Field::Real {
                    assert!(s.is_real());
                }
            }
        }
    }
}
