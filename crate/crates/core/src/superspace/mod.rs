//! Graded superspace: coordinate algebra, Lie-(super)algebra valued
//! superfields, the BCH tower with its generating function, and the induced
//! covariant derivatives.

mod bch;
mod coords;
mod covderiv;
mod superfield;

use thiserror::Error;

pub use bch::{bch_coefficients, bch_series, riccati_residual, riccati_solution};
pub use coords::{monomials_up_to, Element, GradedPoly, GradedSymbol, Monomial, Point, Sym};
pub use covderiv::{
    case_closure, closure_residuals, corrected_a8_lambda0, covariant_derivatives, derived_covariant_derivatives,
    f_element, graded_bracket, infinitesimal_transformations, lambda0, leibniz_residual, printed_lambda0,
    printed_transformations, Case, ClosureResidual, CovariantDerivative, X,
};
pub use superfield::{
    generator_names, lambda_tower, printed_algebra_commutator, printed_superalgebra_commutator,
    superfield_commutator, Superfield,
};

use crate::kernel::{GradingKind, PowerSeries, Scalar};
use crate::report::{Check, Report};
use crate::structure::{AlgebraConstants, BracketTable, SuperalgebraConstants};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SuperspaceError {
    #[error("both superfields use point label {0:?}")]
    LabelCollision(Point),
    #[error("superfield and structure constants are of different kinds")]
    KindMismatch,
    #[error("unknown covariant derivative case {0:?} (expected s10, s10-, a4 or a8)")]
    UnknownCase(String),
}

/// Closure degree used by the reports.
pub const CLOSURE_DEGREE: usize = 4;

fn render_series(s: &PowerSeries) -> String {
    let nz: Vec<String> = s
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| format!("{}·x^{k}", c.render()))
        .collect();
    if nz.is_empty() {
        "0".into()
    } else {
        nz.join(" + ")
    }
}

/// BCH coefficients c₀..c_order together with the checks on them.
pub fn bch_report(order: usize) -> Report {
    let c = bch_coefficients(order);
    let mut rep = Report::new();
    let known = [Scalar::frac(-1, 2), Scalar::frac(1, 12), Scalar::zero(), Scalar::frac(-1, 720)];
    for (n, want) in known.iter().enumerate().take(order + 1) {
        rep.push(
            Check::from_bool(format!("c{n} = {}", want.render()), c[n] == *want, format!("got {}", c[n].render()))
                .anchor("first coefficients of the generating function"),
        );
    }
    let odd: Vec<usize> = (2..=order).step_by(2).filter(|&n| !c[n].is_zero()).collect();
    rep.push(
        Check::from_bool(format!("c_2n = 0 for 1 <= n <= {}", order / 2), odd.is_empty(), format!("nonzero at {odd:?}"))
            .anchor("g(x) = f(x) + 1/2 is odd"),
    );
    let r = riccati_residual(&Scalar::int(-1), &bch_series(order), order);
    rep.push(
        Check::from_bool(format!("Riccati residual with C = -1 vanishes to order {order}"), r.is_zero(), render_series(&r))
            .anchor("Riccati equation for the generating function"),
    );
    let listing: Vec<String> = c.iter().enumerate().map(|(n, v)| format!("c{n}={}", v.render())).collect();
    rep.push(Check::pass(format!("coefficients c0..c{order}")).detail(listing.join(", ")));
    rep
}

/// The regular solution f_C of the Riccati equation, checked to `order`.
pub fn riccati_report(c: &Scalar, order: usize) -> Report {
    let mut rep = Report::new();
    let f = riccati_solution(c, order);
    let r = riccati_residual(c, &f, order);
    rep.push(
        Check::from_bool(format!("f_C solves the Riccati equation for C = {} to order {order}", c.render()), r.is_zero(), render_series(&r))
            .anchor("general solution C/(1-exp(-Cx)) - 1/x"),
    );
    let f0 = f.coeff(0);
    let want = c * &Scalar::frac(1, 2);
    rep.push(
        Check::from_bool(format!("f_C(0) = C/2 for C = {}", c.render()), f0 == want, format!("got {}", f0.render()))
            .anchor("value at the origin fixes C"),
    );
    if *c == Scalar::int(-1) {
        rep.push(
            Check::from_bool("f_-1 is the BCH generating function", f == bch_series(order), render_series(&f))
                .anchor("f(x) = 1/(exp(x)-1) - 1/x"),
        );
    }
    rep.push(Check::pass("series f_C").detail(render_series(&f)));
    rep
}

fn closure_checks(case: Case, order: usize, rep: &mut Report) {
    let table = case.table();
    for r in case_closure(case, order, CLOSURE_DEGREE) {
        let scope = if matches!(case, Case::A8) {
            format!("on {} monomials of degree <= {CLOSURE_DEGREE}, to x-degree {}", r.monomials, order.saturating_sub(1))
        } else {
            format!("on {} monomials of degree <= {CLOSURE_DEGREE}", r.monomials)
        };
        let residual = match &r.failure {
            Some((m, res)) => format!("on {m}: {res}"),
            None => String::new(),
        };
        let anchor = if r.is_trivial(&table) {
            "vanishing (anti)commutators of the covariant derivatives"
        } else {
            "covariant derivatives close the algebra with an overall -1"
        };
        rep.push(Check::from_bool(format!("{case}: {} {scope}", r.relation), r.holds(), residual).anchor(anchor));
    }
}

/// Infinitesimal transformations, covariant derivatives and their closure for
/// one case; `order` truncates the A8 generating function.
pub fn covderiv_report(case: Case, order: usize) -> Report {
    let mut rep = Report::new();
    let kind = case.kind();
    let names: [String; 4] = std::array::from_fn(|k| Sym::new(Point::Free, k as u8).name(kind));
    let derived = infinitesimal_transformations(case, order);
    let printed = printed_transformations(case, order);
    for k in 0..4 {
        rep.push(
            Check::from_bool(
                format!("{case}: delta({}) = {}", names[k], printed[k]),
                derived[k] == printed[k],
                format!("computed {}", derived[k]),
            )
            .anchor("infinitesimal transformations of the graded coordinates"),
        );
    }
    let ds = covariant_derivatives(case, order);
    let dd = derived_covariant_derivatives(case, order);
    for k in 0..4 {
        rep.push(
            Check::from_bool(format!("{case}: {}", ds[k].render(kind)), ds[k] == dd[k], format!("induced {}", dd[k].render(kind)))
                .anchor("induced covariant derivatives"),
        );
    }
    closure_checks(case, order, &mut rep);
    rep
}

/// First-principles superfield commutators against the closed formulas as
/// printed, and Λ⁽⁰⁾ of each worked case against its printed value.
pub fn superfield_report() -> Report {
    let mut rep = Report::new();
    // Generic, not necessarily admissible, constants: the formula is bilinear
    // in them and does not use the Jacobi identity.
    let ac = AlgebraConstants::from_ints([2, 3, 5], [7, 11, 13]);
    let sc = SuperalgebraConstants::from_ints([2, 3, 5, 7, 11, 13, 17, 19]);
    let cases: [(GradingKind, BracketTable, Superfield, &str); 2] = [
        (GradingKind::Z2Z2Algebra, BracketTable::algebra(&ac), printed_algebra_commutator(&ac), "algebra"),
        (GradingKind::Z2Z2Superalgebra, BracketTable::superalgebra(&sc), printed_superalgebra_commutator(&sc), "superalgebra"),
    ];
    for (kind, table, printed, tag) in cases {
        let got = superfield_commutator(&table, &Superfield::at(kind, Point::A), &Superfield::at(kind, Point::B))
            .expect("distinct points");
        let gen = generator_names(kind);
        for k in 0..4 {
            let diff = &got.comps[k] - &printed.comps[k];
            rep.push(
                Check::from_bool(
                    format!("{tag} superfield commutator, {} coefficient, matches the printed closed formula", gen[k]),
                    diff.is_zero(),
                    format!("first principles minus printed = {diff}"),
                )
                .anchor("superfield commutators at two points"),
            );
        }
    }
    for case in Case::all() {
        let got = lambda0(case);
        let printed = printed_lambda0(case);
        let gen = generator_names(case.kind());
        let mut check = Check::from_bool(
            format!("{case}: Lambda^(0) matches the printed value {}", printed.render(&gen)),
            got == printed,
            format!("computed {}", got.render(&gen)),
        )
        .anchor("first commutator of the BCH tower");
        if matches!(case, Case::A8) && got == corrected_a8_lambda0() {
            check.residual = format!("{}; the computed value is the one the printed delta(w3) requires", check.residual);
        }
        rep.push(check);
        let table = case.table();
        let phi = Superfield::at(case.kind(), Point::Free);
        let lam = Superfield::at(case.kind(), Point::Param);
        let (name, ok, detail) = match case {
            Case::A8 => {
                let ok = (0..6).all(|n| {
                    let next = lambda_tower(&table, &phi, &lam, n + 1);
                    let cur = lambda_tower(&table, &phi, &lam, n);
                    let mut xcur = cur.clone();
                    for c in xcur.comps.iter_mut() {
                        *c = &Element::sym(case.kind(), X) * c;
                    }
                    next == xcur
                });
                (format!("{case}: Lambda^(n+1) = x·Lambda^(n) for n < 6"), ok, String::new())
            }
            _ => {
                let t = lambda_tower(&table, &phi, &lam, 1);
                (format!("{case}: Lambda^(1) = 0"), t.is_zero(), t.render(&gen))
            }
        };
        rep.push(Check::from_bool(name, ok, detail).anchor("BCH tower of iterated commutators"));
    }
    rep
}

/// Everything in this module at the given truncation order.
pub fn superspace_report(order: usize) -> Report {
    let mut rep = Report::new();
    rep.extend(superfield_report());
    rep.extend(bch_report(order));
    rep.extend(riccati_report(&Scalar::int(-1), order));
    for case in Case::all() {
        rep.extend(covderiv_report(case, order));
    }
    rep
}
