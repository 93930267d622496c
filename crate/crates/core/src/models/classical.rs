use crate::kernel::{sign_i32, GradingKind, GradingVector, Scalar};
use crate::report::{Check, Report};
use crate::structure::{table_entry, BracketTable, Constants, Family, SuperalgebraConstants, TableLabel, BASIS_GRADINGS};

use crate::superspace::GradedSymbol;

use super::jets::{DSym, DiffPoly, FieldModel};

fn half() -> Scalar {
    Scalar::frac(1, 2)
}

/// A1 at ε = 1 acting on x, w1, w2, w3 with V(u), u = x² − w1² − w2² − w3².
pub fn a1_model() -> FieldModel {
    let kind = GradingKind::Z2Z2Algebra;
    let j = |f: u8, o: u8| DiffPoly::sym(kind, DSym::Jet { field: f, order: o });
    let h = |f: u8| j(f, 0).scale(&half());
    let sq = |f: u8| &j(f, 0) * &j(f, 0);
    let u = &(&(&sq(0) - &sq(1)) - &sq(2)) - &sq(3);
    FieldModel {
        name: "A1[eps=1]".into(),
        kind,
        gen_names: ["H", "Q1", "Q2", "Q3"],
        funcs: vec![(0, u)],
        action: [
            [j(0, 1), j(1, 1), j(2, 1), j(3, 1)],
            [h(1), h(0), h(3), h(2)],
            [h(2), h(3), h(0), h(1)],
            [h(3), h(2), h(1), h(0)],
        ],
    }
}

/// S7 at ε = 1 on x, θ, η, s (slots 00, 10, 01, 11) with f(z), z = x² − s²;
/// `c` is cos²γ.
pub fn s7_model(c: &Scalar) -> FieldModel {
    let kind = GradingKind::Z2Z2Superalgebra;
    let j = |f: u8, o: u8| DiffPoly::sym(kind, DSym::Jet { field: f, order: o });
    let sq = |f: u8| &j(f, 0) * &j(f, 0);
    let sn = &Scalar::one() - c;
    // slots: 0 = x, 1 = θ, 2 = η, 3 = s
    FieldModel {
        name: "S7[eps=1]".into(),
        kind,
        gen_names: ["H", "Q10", "Q01", "Z"],
        funcs: vec![(1, &sq(0) - &sq(3))],
        action: [
            [j(0, 1), j(1, 1), j(2, 1), j(3, 1)],
            [j(1, 0), j(0, 1), j(3, 1), j(2, 0)],
            [j(2, 0), j(3, 1), j(0, 1), j(1, 0)],
            [j(3, 0).scale(c), j(2, 0).scale(&sn), j(1, 0).scale(&sn), j(0, 0).scale(c)],
        ],
    }
}

/// The brackets realized by the S7 D-module operators:
/// {Q10,Q10} = {Q01,Q01} = 2H, {Z,Q10} = Q01, {Z,Q01} = Q10, all others 0.
pub fn s7_relations() -> SuperalgebraConstants {
    SuperalgebraConstants::from_ints([0, 0, 0, 0, 1, 1, 2, 2])
}

pub fn model_table(m: &FieldModel) -> BracketTable {
    match m.kind {
        GradingKind::Z2Z2Superalgebra => BracketTable::superalgebra(&s7_relations()),
        _ => match table_entry(&TableLabel::with_eps(Family::A(1), 1)).expect("A1 is tabulated") {
            Constants::Algebra(a) => BracketTable::algebra(&a),
            _ => unreachable!("A1 is an algebra"),
        },
    }
}

/// (G_i, G_j}(φ) − Σ_k t_ijk G_k(φ) on every order-0 jet, i ≤ j.
pub fn action_closure(m: &FieldModel, table: &BracketTable) -> Report {
    let mut rep = Report::new();
    for i in 0..4 {
        for j in i..4 {
            let comm = sign_i32(m.kind, &BASIS_GRADINGS[i], &BASIS_GRADINGS[j]) == 1;
            let mut bad = Vec::new();
            for f in 0..4u8 {
                let phi = m.jet(f, 0);
                let ab = m.apply_generator(i, &m.apply_generator(j, &phi).unwrap()).unwrap();
                let ba = m.apply_generator(j, &m.apply_generator(i, &phi).unwrap()).unwrap();
                let mut r = if comm { &ab - &ba } else { &ab + &ba };
                for k in 0..4 {
                    let t = &table.table[i][j][k];
                    if !t.is_zero() {
                        r = &r - &m.apply_generator(k, &phi).unwrap().scale(t);
                    }
                }
                if !r.is_zero() {
                    bad.push(format!("on {}: {r}", DSym::Jet { field: f, order: 0 }.name(m.kind)));
                }
            }
            let (o, c) = if comm { ("[", "]") } else { ("{", "}") };
            let rhs: Vec<String> = (0..4)
                .filter(|&k| !table.table[i][j][k].is_zero())
                .map(|k| format!("{}·{}", table.table[i][j][k].render(), m.gen_names[k]))
                .collect();
            let rhs = if rhs.is_empty() { "0".to_string() } else { rhs.join(" + ") };
            rep.push(
                Check::from_bool(
                    format!("{}: {o}{},{}{c} = {rhs} on the fields", m.name, m.gen_names[i], m.gen_names[j]),
                    bad.is_empty(),
                    bad.join("; "),
                )
                .anchor("field transformations close the algebra"),
            );
        }
    }
    rep
}

fn grading_text(g: Option<GradingVector>) -> String {
    g.map(|g| format!("{g}")).unwrap_or_else(|| "inhomogeneous".into())
}

/// K = ½(ẋ² − ẇ1² − ẇ2² − ẇ3²), L = K + V(u).
pub fn a1_lagrangian(m: &FieldModel) -> (DiffPoly, DiffPoly) {
    let sq = |f: u8| &m.jet(f, 1) * &m.jet(f, 1);
    let k = (&(&(&sq(0) - &sq(1)) - &sq(2)) - &sq(3)).scale(&half());
    let l = &k + &m.func(0, 0);
    (k, l)
}

/// A1 invariance: Q_i(u) = 0, Q_i(L) = 0, H(L) = ∂_t L, L is 00-graded.
pub fn a1_invariance() -> Report {
    let m = a1_model();
    let (k, l) = a1_lagrangian(&m);
    let u = m.funcs[0].1.clone();
    let mut rep = Report::new();
    for g in 1..4 {
        let r = m.apply_generator(g, &u).unwrap();
        rep.push(Check::from_bool(format!("A1: {}(u) = 0", m.gen_names[g]), r.is_zero(), r.render()).anchor("the potential argument u is invariant"));
    }
    rep.extend(lagrangian_invariance_a1(&m, &l));
    rep.push(
        Check::from_bool("A1: K is 00-graded", k.grading() == Some(GradingVector::G00), grading_text(k.grading()))
            .anchor("kinetic term"),
    );
    rep.push(
        Check::from_bool("A1: L is 00-graded", l.grading() == Some(GradingVector::G00), grading_text(l.grading()))
            .anchor("the Lagrangian is 00-graded by construction"),
    );
    // equations of motion: δL/δφ has the grading of φ
    let eom = m.variational_derivatives(&l).unwrap();
    for (f, e) in eom.iter().enumerate() {
        let ok = e.grading() == Some(BASIS_GRADINGS[f]);
        rep.push(
            Check::from_bool(
                format!("A1: equation of motion for {} has the field's grading", super::jets::field_name(m.kind, f as u8)),
                ok,
                grading_text(e.grading()),
            )
            .anchor("consistency of the equations of motion"),
        );
    }
    rep.extend(action_closure(&m, &model_table(&m)));
    rep
}

/// Q_i(L) = 0 exactly and H(L) = ∂_t L for an arbitrary A1 Lagrangian.
pub fn lagrangian_invariance_a1(m: &FieldModel, l: &DiffPoly) -> Report {
    let mut rep = Report::new();
    let hl = &m.apply_generator(0, l).unwrap() - &m.dt(l);
    rep.push(Check::from_bool("A1: H(L) = dL/dt", hl.is_zero(), hl.render()).anchor("invariance of the A1 action"));
    for g in 1..4 {
        let r = m.apply_generator(g, l).unwrap();
        rep.push(Check::from_bool(format!("A1: {}(L) = 0", m.gen_names[g]), r.is_zero(), r.render()).anchor("invariance of the A1 action"));
    }
    rep
}

fn f_theta_eta(m: &FieldModel) -> DiffPoly {
    &(&m.func(1, 0) * &m.jet(1, 0)) * &m.jet(2, 0)
}

/// Q10·Q01(f(z)θη), expanded with the graded Leibniz rule.
pub fn s7_lagrangian(m: &FieldModel) -> DiffPoly {
    let inner = m.apply_generator(2, &f_theta_eta(m)).unwrap();
    m.apply_generator(1, &inner).unwrap()
}

/// f(z)(ẋ² − ṡ² + θθ̇ − ηη̇) + 2f_z(z)θη(sẋ − xṡ), the closed form as
/// printed.
pub fn s7_printed_lagrangian(m: &FieldModel) -> DiffPoly {
    let j = |f, o| m.jet(f, o);
    let kin = &(&(&(&j(0, 1) * &j(0, 1)) - &(&j(3, 1) * &j(3, 1))) + &(&j(1, 0) * &j(1, 1))) - &(&j(2, 0) * &j(2, 1));
    let so = &(&j(3, 0) * &j(0, 1)) - &(&j(0, 0) * &j(3, 1));
    let te = &j(1, 0) * &j(2, 0);
    &(&m.func(1, 0) * &kin) + &(&(&m.func(1, 1) * &te) * &so).scale(&Scalar::int(2))
}

/// Expansion of Q10·Q01(f θη) compared with the printed closed form.
pub fn s7_lagrangian_report(m: &FieldModel) -> Report {
    let l = s7_lagrangian(m);
    let p = s7_printed_lagrangian(m);
    let mut rep = Report::new();
    let mut diffs = Vec::new();
    let keys: std::collections::BTreeSet<_> = l.terms().keys().chain(p.terms().keys()).cloned().collect();
    for k in keys {
        let (a, b) = (l.coeff(&k), p.coeff(&k));
        if a != b {
            let mono = DiffPoly::monomial(m.kind, Scalar::one(), &k).render();
            diffs.push(format!("{mono}: expanded {}, printed {}", a.render(), b.render()));
        }
    }
    rep.push(
        Check::from_bool("S7: Q10·Q01(f(z)θη) equals the printed Lagrangian term by term", diffs.is_empty(), diffs.join("; "))
            .anchor("closed form of the S7 Lagrangian")
            .certificate(serde_json::json!({ "expanded": l.render(), "printed": p.render() })),
    );
    let f = DSym::Func { func: 1, deriv: 0 };
    let fz = DSym::Func { func: 1, deriv: 1 };
    let jet = |f: u8, o: u8| DSym::Jet { field: f, order: o };
    let picks = [
        ("f·ẋ²", vec![f, jet(0, 1), jet(0, 1)], 1),
        ("f·ṡ²", vec![f, jet(3, 1), jet(3, 1)], -1),
        ("f·η·η̇", vec![f, jet(2, 0), jet(2, 1)], -1),
        ("f_z·θ·η·s·ẋ", vec![fz, jet(1, 0), jet(2, 0), jet(3, 0), jet(0, 1)], 2),
        ("f_z·θ·η·x·ṡ", vec![fz, jet(1, 0), jet(2, 0), jet(0, 0), jet(3, 1)], -2),
    ];
    for (name, mono, want) in picks {
        let got = l.coeff(&mono);
        rep.push(
            Check::from_bool(format!("S7: coefficient of {name} is {want}"), got == Scalar::int(want), format!("got {}", got.render()))
                .anchor("closed form of the S7 Lagrangian"),
        );
    }
    rep.push(
        Check::from_bool("S7: L is 00-graded", l.grading() == Some(GradingVector::G00), grading_text(l.grading()))
            .anchor("the Lagrangian is 00-graded by construction"),
    );
    rep
}

/// Every generator maps `l` to a total time derivative. The grading of the
/// boundary term L_R (that of R(L)) is recorded in the detail.
pub fn invariance_under_all(m: &FieldModel, l: &DiffPoly, tag: &str) -> Report {
    let mut rep = Report::new();
    for g in 0..4 {
        let r = m.apply_generator(g, l).unwrap();
        let vd = m.variational_derivatives(&r).unwrap();
        let bad: Vec<String> = vd
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_zero())
            .map(|(f, e)| format!("δ/δ{}: {e}", super::jets::field_name(m.kind, f as u8)))
            .collect();
        let detail = if bad.is_empty() {
            if r.is_zero() {
                "R(L) = 0".to_string()
            } else {
                format!("R(L) = d/dt(L_R), L_R graded {}", grading_text(r.grading()))
            }
        } else {
            bad.join("; ")
        };
        rep.push(
            Check::from_bool(format!("{}: {}({tag}) is a total time derivative", m.name, m.gen_names[g]), bad.is_empty(), "")
                .detail(detail)
                .anchor("the Lagrangian transforms at most as a time derivative"),
        );
    }
    rep
}

/// The S7 classical checks: expansion, invariance of the expanded and of the
/// printed Lagrangian, Z(z) = Z(θη) = 0, closure on the fields.
pub fn s7_invariance(c: &Scalar) -> Report {
    let m = s7_model(c);
    let mut rep = s7_lagrangian_report(&m);
    let l = s7_lagrangian(&m);
    rep.extend(invariance_under_all(&m, &l, "L"));
    let z = m.funcs[0].1.clone();
    let zz = m.apply_generator(3, &z).unwrap();
    rep.push(Check::from_bool("S7: Z(z) = 0", zz.is_zero(), zz.render()).anchor("invariance under Z"));
    let te = &m.jet(1, 0) * &m.jet(2, 0);
    let zte = m.apply_generator(3, &te).unwrap();
    rep.push(Check::from_bool("S7: Z(θη) = 0", zte.is_zero(), zte.render()).anchor("invariance under Z"));
    let zl = m.apply_generator(3, &l).unwrap();
    rep.push(Check::from_bool("S7: Z(L) = 0", zl.is_zero(), zl.render()).anchor("invariance under Z"));
    rep.extend(invariance_under_all(&m, &s7_printed_lagrangian(&m), "L as printed"));
    rep.extend(action_closure(&m, &model_table(&m)));
    rep
}
