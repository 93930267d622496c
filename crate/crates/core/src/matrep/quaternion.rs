use std::collections::BTreeMap;

use super::families::family_rep;
use super::matrix::GradedMatrix;
use crate::kernel::Scalar;
use crate::report::{Check, Report};
use crate::structure::{Family, TableLabel};

fn s(n: i64) -> Scalar {
    Scalar::int(n)
}

/// e₀..e₃ of the quaternions, or ẽ₀..ẽ₃ of the split-quaternions.
pub fn quaternion_units(split: bool) -> [GradedMatrix; 4] {
    let m = |v: &[(usize, usize, i64)]| {
        GradedMatrix::from_entries(4, &v.iter().map(|&(r, c, x)| (r, c, s(x))).collect::<Vec<_>>())
    };
    let e1 = m(&[(1, 3, 1), (2, 4, 1), (3, 1, -1), (4, 2, -1)]);
    if split {
        [
            GradedMatrix::identity(4),
            e1,
            m(&[(1, 4, 1), (2, 3, 1), (3, 2, 1), (4, 1, 1)]),
            m(&[(1, 2, 1), (2, 1, 1), (3, 4, -1), (4, 3, -1)]),
        ]
    } else {
        [
            GradedMatrix::identity(4),
            e1,
            m(&[(1, 4, 1), (2, 3, -1), (3, 2, 1), (4, 1, -1)]),
            m(&[(1, 2, 1), (2, 1, -1), (3, 4, -1), (4, 3, 1)]),
        ]
    }
}

fn levi_civita(i: usize, j: usize, k: usize) -> i64 {
    match (i, j, k) {
        (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1,
        (3, 2, 1) | (2, 1, 3) | (1, 3, 2) => -1,
        _ => 0,
    }
}

/// Check e_i·e_j = −δ_ij e₀ + ε_ijk e_k, or for the split-quaternions
/// ẽ_i·ẽ_j = N_ij ẽ₀ + ε_ijk N_k ẽ_k with N = diag(−1, 1, 1).
pub fn composition_report(split: bool) -> Report {
    let e = quaternion_units(split);
    let n = if split { [0, -1, 1, 1] } else { [0, -1, -1, -1] };
    let tag = if split { "split-quaternion" } else { "quaternion" };
    let mut rep = Report::new();
    rep.push(Check::from_bool(format!("{tag} unit e0 is the identity"), e[0] == GradedMatrix::identity(4), "e0 != I"));
    for i in 1..4 {
        for j in 1..4 {
            let mut rhs = if i == j { e[0].scale(&s(n[i])) } else { GradedMatrix::zeros(4) };
            for k in 1..4 {
                let c = levi_civita(i, j, k) * if split { n[k] } else { 1 };
                if c != 0 {
                    rhs = rhs.add(&e[k].scale(&s(c)));
                }
            }
            let res = e[i].mul(&e[j]).sub(&rhs);
            rep.push(
                Check::from_bool(format!("{tag} product e{i}·e{j}"), res.is_zero(), format!("{res:?}"))
                    .anchor("composition law of the imaginary units"),
            );
        }
    }
    rep
}

/// The scalar c with a = c·b, if there is one and it is nonzero.
pub fn scalar_multiple(a: &GradedMatrix, b: &GradedMatrix) -> Option<Scalar> {
    let (r, c) = *b.support().first()?;
    let f = a.get(r, c) / b.get(r, c);
    (!f.is_zero() && *a == b.scale(&f)).then_some(f)
}

/// One representation-family setting that should reproduce the
/// (split-)quaternion units up to per-matrix factors.
#[derive(Debug, Clone)]
pub struct Identification {
    pub name: &'static str,
    pub label: TableLabel,
    pub variant: &'static str,
    pub params: BTreeMap<String, Scalar>,
    pub split: bool,
}

fn params(kv: &[(&str, i64)]) -> BTreeMap<String, Scalar> {
    kv.iter().map(|(k, v)| (k.to_string(), s(*v))).collect()
}

pub fn identifications() -> Vec<Identification> {
    vec![
        Identification {
            name: "A7 at lambda=1, p=-q=-1 gives the quaternions",
            label: TableLabel::new(Family::A(7)),
            variant: "general",
            params: params(&[("lambda", 1), ("p", -1), ("q", 1)]),
            split: false,
        },
        Identification {
            name: "A7 at lambda=1, p=q=-1 gives the split-quaternions",
            label: TableLabel::new(Family::A(7)),
            variant: "general",
            params: params(&[("lambda", 1), ("p", -1), ("q", -1)]),
            split: true,
        },
        Identification {
            name: "S10 (eps=1) at lambda=-2, p=1, q=-1 gives the quaternions",
            label: TableLabel::with_eps(Family::S(10), 1),
            variant: "general",
            params: params(&[("lambda", -2), ("p", 1), ("q", -1)]),
            split: false,
        },
        Identification {
            name: "S10 (eps=-1) at lambda=2, p=1, q=1 gives the split-quaternions",
            label: TableLabel::with_eps(Family::S(10), -1),
            variant: "general",
            params: params(&[("lambda", 2), ("p", 1), ("q", 1)]),
            split: true,
        },
    ]
}

/// Per-matrix factors relating the family matrices to the units, or the
/// index of the first matrix that is not a multiple.
pub fn identify(id: &Identification) -> Result<[Scalar; 4], String> {
    let rep = family_rep(&id.label, id.variant, &id.params).map_err(|e| e.to_string())?;
    let units = quaternion_units(id.split);
    let names = rep.names();
    let mut out: [Scalar; 4] = std::array::from_fn(|_| Scalar::zero());
    for k in 0..4 {
        out[k] = scalar_multiple(&rep.mats[k], &units[k]).ok_or_else(|| format!("{} is not a multiple of e{k}", names[k]))?;
    }
    Ok(out)
}

pub fn identification_report() -> Report {
    let mut rep = Report::new();
    rep.extend(composition_report(false));
    rep.extend(composition_report(true));
    for id in identifications() {
        let check = match identify(&id) {
            Ok(f) => Check::pass(id.name).detail(format!(
                "factors {}",
                f.iter().map(Scalar::render).collect::<Vec<_>>().join(", ")
            )),
            Err(e) => Check::fail(id.name, e),
        };
        rep.push(check.anchor("recovered up to normalizing factors"));
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_laws() {
        assert!(composition_report(false).ok());
        assert!(composition_report(true).ok());
    }

    #[test]
    fn a7_quaternions_exactly() {
        let f = identify(&identifications()[0]).unwrap();
        assert!(f.iter().all(Scalar::is_one));
    }

    #[test]
    fn s10_factors() {
        let f = identify(&identifications()[2]).unwrap();
        assert_eq!(f, [s(-2), s(1), s(1), s(2)]);
        let f = identify(&identifications()[3]).unwrap();
        assert_eq!(f, [s(2), s(1), s(1), s(2)]);
    }

    #[test]
    fn not_a_multiple() {
        let u = quaternion_units(false);
        assert_eq!(scalar_multiple(&u[1], &u[2]), None);
        assert_eq!(scalar_multiple(&u[1].scale(&s(3)), &u[1]), Some(s(3)));
    }
}
