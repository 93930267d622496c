use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use z2z2_core::kernel::{bracket_sign, GradingKind, Scalar};
use z2z2_core::structure::{AlgebraConstants, BracketTable, SuperalgebraConstants};
use z2z2_core::superspace::*;

/// Bernoulli numbers from Σ_{k=0}^{m} C(m+1,k) B_k = 0, B_0 = 1.
fn bernoulli(n: usize) -> Vec<BigRational> {
    let binom = |n: usize, k: usize| -> BigInt {
        let mut r = BigInt::from(1);
        for i in 0..k {
            r = r * BigInt::from(n - i) / BigInt::from(i + 1);
        }
        r
    };
    let mut b = vec![BigRational::from_integer(1.into())];
    for m in 1..=n {
        let mut acc = BigRational::from_integer(0.into());
        for (k, bk) in b.iter().enumerate() {
            acc += BigRational::from_integer(binom(m + 1, k)) * bk;
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::from(1), |a, k| a * BigInt::from(k))
}

#[test]
fn bernoulli_oracle_agrees_to_order_16() {
    let b = bernoulli(17);
    let c = bch_coefficients(16);
    for n in 0..=16 {
        let want = Scalar::real(&b[n + 1] / BigRational::from_integer(factorial(n + 1)));
        assert_eq!(c[n], want, "c{n}");
    }
    assert_eq!(c[5], Scalar::frac(1, 30240));
}

#[test]
fn paper_coefficients_and_parity() {
    let c = bch_coefficients(16);
    assert_eq!(c[..4], [Scalar::frac(-1, 2), Scalar::frac(1, 12), Scalar::zero(), Scalar::frac(-1, 720)]);
    for n in 1..=7 {
        assert!(c[2 * n].is_zero(), "c{}", 2 * n);
    }
    // g = f + 1/2 is odd: g(x) + g(−x) = 0
    let g = &bch_series(16) + &z2z2_core::PowerSeries::constant(Scalar::frac(1, 2), 16);
    let sum = &g + &g.rescale_arg(&Scalar::int(-1));
    assert!(sum.is_zero());
}

#[test]
fn riccati_identities() {
    assert!(riccati_residual(&Scalar::int(-1), &bch_series(16), 16).is_zero());
    assert!(riccati_residual(&Scalar::int(2), &riccati_solution(&Scalar::int(2), 12), 12).is_zero());
    // the wrong constant is detected
    assert!(!riccati_residual(&Scalar::int(1), &bch_series(16), 16).is_zero());
}

#[test]
fn reports_pass_except_flagged_misprints() {
    assert!(bch_report(16).ok());
    assert!(riccati_report(&Scalar::int(-1), 16).ok());
    assert!(riccati_report(&Scalar::int(2), 12).ok());
    for case in Case::all() {
        let r = covderiv_report(case, 16);
        assert!(r.ok(), "{case}: {}", r.to_text());
    }
    let r = superfield_report();
    let failed: Vec<&str> = r.failures().map(|c| c.name.as_str()).collect();
    assert_eq!(failed.len(), 2, "{failed:?}");
    assert!(failed[0].starts_with("algebra superfield commutator, Q3"));
    assert!(failed[1].starts_with("A8[y=0,z=0]: Lambda^(0)"));
}

#[test]
fn a8_closure_needs_the_bch_function() {
    // Replace f by a truncation with a wrong c1: [D_x, D_w3] = −D_w3 breaks.
    let mut ds = covariant_derivatives(Case::A8, 8);
    let kind = GradingKind::Z2Z2Algebra;
    let w3 = Sym::new(Point::Free, 3);
    let bad = &f_element(kind, 8) + &Element::monomial(kind, Scalar::one(), &[X]);
    let one_xf = &Element::one(kind) + &(&Element::sym(kind, X) * &bad);
    ds[3] = CovariantDerivative::new("D_w3", ds[3].grading, vec![(w3, one_xf)]);
    let res = closure_residuals(Case::A8, &ds, 2, Some(8));
    assert!(res.iter().any(|r| !r.holds()));
}

#[test]
fn s10_lambda_tower_terminates() {
    for eps in [1, -1] {
        let case = Case::S10 { eps };
        let kind = case.kind();
        let t = lambda_tower(&case.table(), &Superfield::at(kind, Point::Free), &Superfield::at(kind, Point::Param), 1);
        assert!(t.is_zero());
    }
}

#[test]
fn a7_commutator_vanishes() {
    let t = BracketTable::algebra(&AlgebraConstants::zero());
    let r = superfield_commutator(&t, &Superfield::at(t.kind, Point::A), &Superfield::at(t.kind, Point::B)).unwrap();
    assert!(r.is_zero());
}

fn kind_strategy() -> impl Strategy<Value = GradingKind> {
    prop_oneof![Just(GradingKind::Z2Z2Algebra), Just(GradingKind::Z2Z2Superalgebra)]
}

fn point_strategy() -> impl Strategy<Value = Point> {
    prop_oneof![Just(Point::Param), Just(Point::Free), Just(Point::A), Just(Point::B)]
}

fn syms(max: usize) -> impl Strategy<Value = Vec<Sym>> {
    prop::collection::vec((point_strategy(), 0u8..4).prop_map(|(p, k)| Sym::new(p, k)), 0..=max)
}

fn free_syms(max: usize) -> impl Strategy<Value = Vec<Sym>> {
    prop::collection::vec((0u8..4).prop_map(|k| Sym::new(Point::Free, k)), 0..=max)
}

proptest! {
    #[test]
    fn graded_commutativity(kind in kind_strategy(), a in syms(4), b in syms(4), c in -5i64..5) {
        let u = Element::monomial(kind, Scalar::int(c), &a);
        let v = Element::monomial(kind, Scalar::one(), &b);
        prop_assume!(!u.is_zero() && !v.is_zero());
        let sign = bracket_sign(kind, &u.grading().unwrap(), &v.grading().unwrap()).unwrap();
        prop_assert!((&(&u * &v) - &(&v * &u).scale(&sign)).is_zero());
    }

    #[test]
    fn product_is_associative(kind in kind_strategy(), a in syms(3), b in syms(3), c in syms(3)) {
        let (u, v, w) = (
            Element::monomial(kind, Scalar::one(), &a),
            Element::monomial(kind, Scalar::one(), &b),
            Element::monomial(kind, Scalar::one(), &c),
        );
        prop_assert_eq!(&(&u * &v) * &w, &u * &(&v * &w));
    }

    #[test]
    fn graded_leibniz(case_ix in 0usize..4, k in 0usize..4, a in free_syms(3), b in free_syms(3)) {
        let case = Case::all()[case_ix];
        let kind = case.kind();
        let d = &covariant_derivatives(case, 8)[k];
        let u = Element::monomial(kind, Scalar::one(), &a);
        let v = Element::monomial(kind, Scalar::one(), &b);
        prop_assume!(!u.is_zero());
        prop_assert!(leibniz_residual(kind, d, &u, &v).is_zero());
    }

    #[test]
    fn commutator_is_antisymmetric_and_bilinear(
        d in prop::array::uniform3(-3i64..4),
        b in prop::array::uniform3(-3i64..4),
        s in prop::array::uniform8(-3i64..4),
        c in -3i64..4,
    ) {
        let tables = [
            BracketTable::algebra(&AlgebraConstants::from_ints(d, b)),
            BracketTable::superalgebra(&SuperalgebraConstants::from_ints(s)),
        ];
        for t in tables {
            let (pa, pb) = (Superfield::at(t.kind, Point::A), Superfield::at(t.kind, Point::B));
            let ab = superfield_commutator(&t, &pa, &pb).unwrap();
            let ba = superfield_commutator(&t, &pb, &pa).unwrap();
            prop_assert_eq!(ab.add(&ba), Superfield::zero(t.kind));
            prop_assert!(ab.is_homogeneous());
            let scaled = superfield_commutator(&t, &pa.scale(&Scalar::int(c)), &pb).unwrap();
            prop_assert_eq!(scaled, ab.scale(&Scalar::int(c)));
        }
    }
}
