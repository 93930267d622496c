use std::fmt;
use std::str::FromStr;

use crate::kernel::Scalar;
use crate::matrep::{s7_second, verify_rep, Ctx, DPoly, GradedMatrix, Representation, Ring};
use crate::report::{Check, Report};
use crate::structure::{table_entry, Constants, Family, TableLabel};

use super::classical::{a1_model, s7_model, s7_relations};
use super::jets::{DiffPoly, FieldModel};
use super::ModelsError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DModuleCase {
    A1,
    S7,
}

impl fmt::Display for DModuleCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DModuleCase::A1 => "A1[eps=1]",
            DModuleCase::S7 => "S7[eps=1]",
        })
    }
}

impl FromStr for DModuleCase {
    type Err = ModelsError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "a1" => Ok(DModuleCase::A1),
            "s7" | "s7-classical" => Ok(DModuleCase::S7),
            _ => Err(ModelsError::UnknownCase(s.to_string())),
        }
    }
}

fn e(entries: &[(usize, usize, DPoly)]) -> GradedMatrix<DPoly> {
    GradedMatrix::from_entries(4, entries)
}

fn k(s: Scalar) -> DPoly {
    DPoly::from_scalar(&s)
}

/// Field slot of each matrix row: A1 rows are (x, w3, w1, w2), S7 rows are
/// (x, s, θ, η). With this ordering the matrices act on the column of fields
/// exactly as the transformation tables say.
fn row_slots(case: DModuleCase) -> [u8; 4] {
    match case {
        DModuleCase::A1 => [0, 3, 1, 2],
        DModuleCase::S7 => [0, 3, 1, 2],
    }
}

/// H = ∂·𝟙 and the constant or ∂-linear odd operators; for S7, `c` is cos²γ.
pub fn dmodule_rep(case: DModuleCase, c: &Scalar) -> Representation<DPoly> {
    let dd = DPoly::d;
    let one = DPoly::one;
    let h = GradedMatrix::diag(&[dd(), dd(), dd(), dd()]);
    match case {
        DModuleCase::A1 => {
            let half = || k(Scalar::frac(1, 2));
            let constants = table_entry(&TableLabel::with_eps(Family::A(1), 1)).expect("A1 is tabulated");
            Representation::new(
                constants,
                [
                    h,
                    e(&[(1, 3, half()), (2, 4, half()), (3, 1, half()), (4, 2, half())]),
                    e(&[(1, 4, half()), (2, 3, half()), (3, 2, half()), (4, 1, half())]),
                    e(&[(1, 2, half()), (2, 1, half()), (3, 4, half()), (4, 3, half())]),
                ],
            )
        }
        DModuleCase::S7 => {
            let sn = &Scalar::one() - c;
            Representation::new(
                Constants::Superalgebra(s7_relations()),
                [
                    h,
                    e(&[(1, 3, one()), (2, 4, one()), (3, 1, dd()), (4, 2, dd())]),
                    e(&[(1, 4, one()), (2, 3, one()), (3, 2, dd()), (4, 1, dd())]),
                    e(&[(1, 2, k(c.clone())), (2, 1, k(c.clone())), (3, 4, k(sn.clone())), (4, 3, k(sn))]),
                ],
            )
        }
    }
}

/// Z with its cos²γ and sin²γ blocks exchanged. This is the same operator
/// set at 1 − c, so it still closes.
pub fn swap_z_blocks(rep: &Representation<DPoly>) -> Representation<DPoly> {
    let mut out = rep.clone();
    let z = &rep.mats[3];
    out.mats[3] = e(&[(1, 2, z.get(2, 3).clone()), (2, 1, z.get(3, 2).clone()), (3, 4, z.get(0, 1).clone()), (4, 3, z.get(1, 0).clone())]);
    out
}

/// Z with the cos²γ block copied over the sin²γ block; closes only at
/// c = 1/2.
pub fn duplicate_z_block(rep: &Representation<DPoly>) -> Representation<DPoly> {
    let mut out = rep.clone();
    let z = &rep.mats[3];
    out.mats[3] = e(&[(1, 2, z.get(0, 1).clone()), (2, 1, z.get(1, 0).clone()), (3, 4, z.get(0, 1).clone()), (4, 3, z.get(1, 0).clone())]);
    out
}

/// Apply the matrix to the column of fields, ∂ acting as ∂_t on jets.
fn matrix_on_fields(m: &FieldModel, mat: &GradedMatrix<DPoly>, slots: [u8; 4]) -> [DiffPoly; 4] {
    std::array::from_fn(|r| {
        let mut out = DiffPoly::zero(m.kind);
        for (col, &slot) in slots.iter().enumerate() {
            let ent = mat.get(r, col);
            for order in 0..=ent.degree().unwrap_or(0) {
                let a = ent.coeff(order);
                if !a.is_zero() {
                    out = &out + &m.jet(slot, order as u8).scale(&a);
                }
            }
        }
        out
    })
}

/// Closure of the D-module operators, agreement with the field action
/// tables, and with the matrix families after promoting λ.
pub fn dmodule_report(case: DModuleCase, c: &Scalar) -> Report {
    let mut rep = Report::new();
    let model = match case {
        DModuleCase::A1 => a1_model(),
        DModuleCase::S7 => {
            let in_range = c.is_real() && !c.is_negative_real() && !(&Scalar::one() - c).is_negative_real();
            if !in_range {
                rep.push(Check::inconclusive(format!("cos²γ = {} lies outside [0,1]", c.render()), "only c and 1 − c enter the operators"));
            }
            s7_model(c)
        }
    };
    let r = dmodule_rep(case, c);
    let prefix = match case {
        DModuleCase::S7 => format!("{case} D-module (c = {}): ", c.render()),
        _ => format!("{case} D-module: "),
    };
    rep.extend(verify_rep(&r).to_report(&prefix, r.names()));

    let slots = row_slots(case);
    for (g, mat) in r.mats.iter().enumerate() {
        let got = matrix_on_fields(&model, mat, slots);
        let bad: Vec<String> = (0..4)
            .filter(|&row| got[row] != model.action[g][slots[row] as usize])
            .map(|row| format!("row {}: matrix gives {}, table {}", row + 1, got[row], model.action[g][slots[row] as usize]))
            .collect();
        rep.push(
            Check::from_bool(format!("{prefix}{} reproduces the field transformations", r.names()[g]), bad.is_empty(), bad.join("; "))
                .anchor("induced transformations on the graded fields"),
        );
    }

    match case {
        DModuleCase::A1 => {
            let promoted = crate::matrep::promote_to_d(&TableLabel::with_eps(Family::A(1), 1), "mu=lambda");
            let ok = promoted.as_ref().map(|p| p.mats == r.mats).unwrap_or(false);
            rep.push(
                Check::from_bool(format!("{prefix}equals A1[mu=lambda] at eps = 1, lambda = ∂"), ok, format!("{promoted:?}"))
                    .anchor("D-module representation from the real matrices"),
            );
        }
        DModuleCase::S7 if *c == Scalar::one() => {
            let two_d = DPoly::d().scale(&Scalar::int(2));
            let ctx = Ctx {
                lambda: two_d.clone(),
                mu: two_d,
                p: Scalar::one(),
                q: Scalar::zero(),
                eps: Scalar::one(),
                x: Scalar::zero(),
                y: Scalar::zero(),
                z: Scalar::zero(),
            };
            let mut fam = s7_second(&ctx);
            fam[0] = fam[0].scale(&Scalar::frac(1, 2));
            rep.push(
                Check::from_bool(format!("{prefix}equals S7 second variant at eps = 1, p = 1, lambda = 2∂ with H halved"), fam == r.mats, format!("{fam:?}"))
                    .anchor("D-module representation from the real matrices"),
            );
        }
        DModuleCase::S7 => {}
    }
    rep
}
