use proptest::prelude::*;

use z2z2_core::kernel::Scalar;
use z2z2_core::matrep::verify_rep;
use z2z2_core::models::*;
use z2z2_core::structure::BASIS_GRADINGS;

fn half() -> Scalar {
    Scalar::frac(1, 2)
}

#[test]
fn a1_field_actions() {
    let m = a1_model();
    assert_eq!(m.apply_generator(1, &m.jet(0, 0)).unwrap(), m.jet(1, 0).scale(&half()));
    // Q1(x·x) by the product rule, x being even: Q1(x)·x + x·Q1(x)
    let x = m.jet(0, 0);
    let q1x = m.apply_generator(1, &x).unwrap();
    let by_hand = &(&q1x * &x) + &(&x * &q1x);
    assert_eq!(m.apply_generator(1, &(&x * &x)).unwrap(), by_hand);
    assert_eq!(by_hand, &x * &m.jet(1, 0));
}

#[test]
fn s7_field_actions() {
    let c = Scalar::frac(1, 4);
    let m = s7_model(&c);
    // Z(θ) = sin²γ·η
    assert_eq!(m.apply_generator(3, &m.jet(1, 0)).unwrap(), m.jet(2, 0).scale(&Scalar::frac(3, 4)));
    // Q10 x = θ, Q10 θ = ẋ
    assert_eq!(m.apply_generator(1, &m.jet(0, 0)).unwrap(), m.jet(1, 0));
    assert_eq!(m.apply_generator(1, &m.jet(1, 0)).unwrap(), m.jet(0, 1));
    assert_eq!(m.generator_index("Q01"), Ok(2));
    assert!(matches!(m.generator_index("Q3"), Err(ModelsError::UnknownGenerator(_))));
}

#[test]
fn a1_model_report_passes() {
    let r = model_report(Model::A1, &Scalar::zero());
    assert!(r.ok(), "{}", r.to_text());
}

#[test]
fn s7_classical_fails_only_on_printed_lagrangian() {
    let r = model_report(Model::S7Classical, &Scalar::frac(1, 4));
    let names: Vec<&str> = r.failures().map(|c| c.name.as_str()).collect();
    assert_eq!(names.len(), 4, "{names:?}");
    assert!(names.iter().any(|n| n.contains("term by term")));
    assert!(names.iter().filter(|n| n.contains("L as printed")).count() == 3);
}

#[test]
fn s7_printed_coefficients() {
    let m = s7_model(&Scalar::frac(1, 3));
    let l = s7_lagrangian(&m);
    let f = DSym::Func { func: 1, deriv: 0 };
    let fz = DSym::Func { func: 1, deriv: 1 };
    let j = |f, o| DSym::Jet { field: f, order: o };
    assert_eq!(l.coeff(&[f, j(0, 1), j(0, 1)]), Scalar::one());
    assert_eq!(l.coeff(&[fz, j(1, 0), j(2, 0), j(3, 0), j(0, 1)]), Scalar::int(2));
    assert_eq!(l.grading(), Some(BASIS_GRADINGS[0]));
}

#[test]
fn spin_orbit_mutation_breaks_q10() {
    let m = s7_model(&Scalar::frac(1, 4));
    let l = s7_lagrangian(&m);
    let fz = DSym::Func { func: 1, deriv: 1 };
    let j = |f, o| DSym::Jet { field: f, order: o };
    let bump = DiffPoly::monomial(m.kind, Scalar::one(), &[fz, j(1, 0), j(2, 0), j(3, 0), j(0, 1)]);
    let mutated = &l + &bump;
    assert!(!m.is_total_derivative(&m.apply_generator(1, &mutated).unwrap()).unwrap());
    assert!(m.is_total_derivative(&m.apply_generator(1, &l).unwrap()).unwrap());
}

#[test]
fn quantum_closes_and_is_hermitian() {
    for c in [Scalar::zero(), Scalar::frac(2, 7), Scalar::one()] {
        let r = model_report(Model::S7Quantum, &c);
        assert!(r.ok(), "{}", r.to_text());
    }
    let out = model_report(Model::S7Quantum, &Scalar::int(2));
    assert_eq!(out.checks.iter().filter(|c| c.status == z2z2_core::Status::Inconclusive).count(), 1);
}

#[test]
fn quantum_specific_relations() {
    let ops = quantum_s7_operators(&Scalar::frac(1, 4));
    // {Q10,Q10} − 2H and [Q10,Q01]
    let q = ops[1].mul(&ops[1]).add(&ops[1].mul(&ops[1])).sub(&ops[0].scale(&Scalar::int(2)));
    assert!(q.is_zero());
    let qq = ops[1].mul(&ops[2]).sub(&ops[2].mul(&ops[1]));
    assert!(qq.is_zero());
}

fn poly_with_g_equal_x() -> ConcreteG {
    ConcreteG { g: [((1, 0), Scalar::one())].into_iter().collect() }
}

fn monomials(max: u32) -> Vec<P2> {
    let mut out = Vec::new();
    for a in 0..=max {
        for b in 0..=(max - a) {
            out.push([((a, b), Scalar::one())].into_iter().collect());
        }
    }
    out
}

#[test]
fn product_of_first_order_operators_with_g_equal_x() {
    let g = OpExpr::fun(Func::G);
    let dx = OpExpr::letter(Letter::Dx);
    let a = dx.add(&g);
    let b = dx.sub(&g);
    let formal = a.mul(&b);
    assert!(formal.is_normal());
    let cg = poly_with_g_equal_x();
    for p in monomials(5) {
        assert_eq!(cg.act(&formal, &p), cg.act(&a, &cg.act(&b, &p)));
    }
    // ∂x² − g² − g_x with no first-order term survives
    let gx = OpExpr::fun(Func { dx: 1, ..Func::G });
    assert_eq!(formal, dx.concat(&dx).sub(&g.concat(&g)).sub(&gx));
}

fn letter() -> impl Strategy<Value = Letter> {
    prop_oneof![
        Just(Letter::Dx),
        Just(Letter::Dy),
        (any::<bool>(), 0u8..2, 0u8..2).prop_map(|(conj, dx, dy)| Letter::Fun(Func { conj, dx, dy })),
    ]
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (-3i64..=3, -3i64..=3).prop_map(|(a, b)| &Scalar::int(a) + &(&Scalar::i() * &Scalar::int(b)))
}

fn op_expr() -> impl Strategy<Value = OpExpr> {
    prop::collection::vec((scalar(), prop::collection::vec(letter(), 0..5)), 1..4)
        .prop_map(|ts| ts.into_iter().fold(OpExpr::zero(), |acc, (c, w)| acc.add(&OpExpr::word(c, w))))
}

fn concrete_g() -> ConcreteG {
    // g = x + i·y², so that g* ≠ g
    ConcreteG { g: [((1, 0), Scalar::one()), ((0, 2), Scalar::i())].into_iter().collect() }
}

fn diff_poly(kind_s7: bool) -> impl Strategy<Value = (bool, Vec<(i64, Vec<DSym>)>)> {
    let sym = prop_oneof![
        (0u8..4, 0u8..2).prop_map(|(field, order)| DSym::Jet { field, order }),
        (0u8..2).prop_map(move |deriv| DSym::Func { func: if kind_s7 { 1 } else { 0 }, deriv }),
    ];
    prop::collection::vec((-4i64..=4, prop::collection::vec(sym, 0..4)), 1..5).prop_map(move |ts| (kind_s7, ts))
}

fn build(m: &FieldModel, ts: &[(i64, Vec<DSym>)]) -> DiffPoly {
    ts.iter().fold(DiffPoly::zero(m.kind), |acc, (c, syms)| &acc + &DiffPoly::monomial(m.kind, Scalar::int(*c), syms))
}

fn model_for(s7: bool) -> FieldModel {
    if s7 {
        s7_model(&Scalar::frac(1, 3))
    } else {
        a1_model()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn euler_annihilates_total_derivatives((s7, ts) in prop_oneof![diff_poly(true), diff_poly(false)]) {
        let m = model_for(s7);
        let p = build(&m, &ts);
        for v in m.variational_derivatives(&m.dt(&p)).unwrap() {
            prop_assert!(v.is_zero(), "{}", v);
        }
    }

    #[test]
    fn generators_add_gradings((s7, ts) in prop_oneof![diff_poly(true), diff_poly(false)], g in 0usize..4) {
        let m = model_for(s7);
        for (c, syms) in &ts {
            let p = DiffPoly::monomial(m.kind, Scalar::int(*c), syms);
            let Some(gp) = p.grading() else { continue };
            let r = m.apply_generator(g, &p).unwrap();
            if let Some(gr) = r.grading() {
                prop_assert_eq!(gr, gp + BASIS_GRADINGS[g]);
            } else {
                prop_assert!(r.is_zero());
            }
        }
    }

    #[test]
    fn generators_commute_with_dt((s7, ts) in prop_oneof![diff_poly(true), diff_poly(false)], g in 0usize..4) {
        let m = model_for(s7);
        let p = build(&m, &ts);
        let a = m.apply_generator(g, &m.dt(&p)).unwrap();
        let b = m.dt(&m.apply_generator(g, &p).unwrap());
        prop_assert_eq!(a, b);
    }

    #[test]
    fn normal_order_is_idempotent_linear_and_confluent(a in op_expr(), b in op_expr(), s in scalar()) {
        let na = a.normal_order();
        prop_assert!(na.is_normal());
        prop_assert_eq!(na.normal_order(), na.clone());
        prop_assert_eq!(a.normal_order_with(RewriteOrder::Rightmost), na.clone());
        let lhs = a.add(&b.scale(&s)).normal_order();
        let rhs = na.add(&b.normal_order().scale(&s));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn adjoint_is_an_involutive_antihomomorphism(a in op_expr(), b in op_expr()) {
        prop_assert_eq!(a.adjoint().adjoint(), a.normal_order());
        prop_assert_eq!(a.mul(&b).adjoint(), b.adjoint().mul(&a.adjoint()));
    }

    #[test]
    fn formal_products_match_concrete_action(a in op_expr(), b in op_expr()) {
        let g = concrete_g();
        let formal = a.mul(&b);
        for p in monomials(3) {
            prop_assert_eq!(g.act(&formal, &p), g.act(&a, &g.act(&b, &p)));
        }
    }
}

#[test]
fn dmodule_reps_close_and_corruption_fails() {
    let a1 = dmodule_rep(DModuleCase::A1, &Scalar::zero());
    assert!(verify_rep(&a1).ok());
    let s7 = dmodule_rep(DModuleCase::S7, &Scalar::frac(1, 4));
    assert!(verify_rep(&s7).ok());
    assert!(!verify_rep(&duplicate_z_block(&s7)).ok());
    assert!(dmodule_report(DModuleCase::S7, &Scalar::frac(1, 4)).ok());
}

#[test]
fn jet_order_and_case_errors() {
    let m = a1_model();
    assert_eq!(m.euler_operator(&m.jet(2, 3), 2), Err(ModelsError::JetOrder(3)));
    assert!("s8".parse::<Model>().is_err());
    assert_eq!("s7-quantum".parse::<Model>(), Ok(Model::S7Quantum));
}
