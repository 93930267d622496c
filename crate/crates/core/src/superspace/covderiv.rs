use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::bch::bch_coefficients;
use super::coords::{monomials_up_to, Element, Point, Sym};
use super::superfield::{commutator_unchecked, lambda_tower, Superfield};
use super::SuperspaceError;
use crate::kernel::{sign_i32, GradingKind, GradingVector, Scalar};
use crate::structure::{AlgebraConstants, BracketTable, SuperalgebraConstants, BASIS_GRADINGS};

/// The three superspaces whose covariant derivatives are worked out
/// explicitly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Case {
    S10 { eps: i64 },
    A4,
    /// A8 at y = z = 0.
    A8,
}

impl Case {
    pub fn kind(&self) -> GradingKind {
        match self {
            Case::S10 { .. } => GradingKind::Z2Z2Superalgebra,
            _ => GradingKind::Z2Z2Algebra,
        }
    }

    pub fn table(&self) -> BracketTable {
        match *self {
            Case::S10 { eps } => BracketTable::superalgebra(&SuperalgebraConstants::from_ints([0, 0, 0, 1, 0, 0, eps, 1])),
            Case::A4 => BracketTable::algebra(&AlgebraConstants::from_ints([0, 0, 1], [0, 0, 0])),
            Case::A8 => BracketTable::algebra(&AlgebraConstants::from_ints([0, 0, 0], [0, 0, 1])),
        }
    }

    pub fn all() -> [Case; 4] {
        [Case::S10 { eps: 1 }, Case::S10 { eps: -1 }, Case::A4, Case::A8]
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Case::S10 { eps } => write!(f, "S10[eps={eps}]"),
            Case::A4 => f.write_str("A4"),
            Case::A8 => f.write_str("A8[y=0,z=0]"),
        }
    }
}

impl FromStr for Case {
    type Err = SuperspaceError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "s10" | "s10+" | "s10[eps=1]" => Ok(Case::S10 { eps: 1 }),
            "s10-" | "s10[eps=-1]" => Ok(Case::S10 { eps: -1 }),
            "a4" => Ok(Case::A4),
            "a8" | "a8_00" | "a8[y=0,z=0]" => Ok(Case::A8),
            _ => Err(SuperspaceError::UnknownCase(s.to_string())),
        }
    }
}

fn coord(k: u8) -> Sym {
    Sym::new(Point::Free, k)
}

fn param(k: u8) -> Sym {
    Sym::new(Point::Param, k)
}

pub const X: Sym = Sym::new(Point::Free, 0);

/// First-order operator Σ_k c_k ∂/∂X_k with graded left derivatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CovariantDerivative {
    pub name: String,
    pub grading: GradingVector,
    pub coeffs: BTreeMap<Sym, Element>,
}

impl CovariantDerivative {
    pub fn new(name: impl Into<String>, grading: GradingVector, terms: Vec<(Sym, Element)>) -> Self {
        let mut coeffs: BTreeMap<Sym, Element> = BTreeMap::new();
        for (s, c) in terms {
            let sum = match coeffs.remove(&s) {
                Some(old) => &old + &c,
                None => c,
            };
            if !sum.is_zero() {
                coeffs.insert(s, sum);
            }
        }
        CovariantDerivative { name: name.into(), grading, coeffs }
    }

    pub fn apply(&self, e: &Element) -> Element {
        let mut out = Element::zero(e.kind());
        for (s, c) in &self.coeffs {
            let d = e.derivative(s);
            if !d.is_zero() {
                out = &out + &(c * &d);
            }
        }
        out
    }

    /// Coefficients rendered as `(coordinate, coefficient)` pairs.
    pub fn render_terms(&self, kind: GradingKind) -> Vec<(String, String)> {
        self.coeffs.iter().map(|(s, c)| (s.name(kind), c.render())).collect()
    }

    pub fn render(&self, kind: GradingKind) -> String {
        let parts: Vec<String> = self.render_terms(kind).into_iter().map(|(s, c)| format!("({c})∂_{s}")).collect();
        format!("{} = {}", self.name, if parts.is_empty() { "0".into() } else { parts.join(" + ") })
    }
}

/// (D1, D2} applied to `e`: D1D2e − (−1)^{deg D1 · deg D2} D2D1e.
pub fn graded_bracket(kind: GradingKind, d1: &CovariantDerivative, d2: &CovariantDerivative, e: &Element) -> Element {
    let a = d1.apply(&d2.apply(e));
    let b = d2.apply(&d1.apply(e));
    if sign_i32(kind, &d1.grading, &d2.grading) == 1 {
        &a - &b
    } else {
        &a + &b
    }
}

fn names(kind: GradingKind) -> [String; 4] {
    std::array::from_fn(|k| format!("D_{}", coord(k as u8).name(kind)))
}

/// δX = Λ + Σ_n c_n Λ⁽ⁿ⁾, component by component. The sum stops once the
/// tower vanishes, or after n = `order` for towers that do not terminate.
pub fn infinitesimal_transformations(case: Case, order: usize) -> [Element; 4] {
    let table = case.table();
    let kind = case.kind();
    let phi = Superfield::at(kind, Point::Free);
    let lambda = Superfield::at(kind, Point::Param);
    let c = bch_coefficients(order);
    let mut delta = lambda.clone();
    let mut tower = commutator_unchecked(&table, &phi, &lambda);
    for cn in &c {
        if tower.is_zero() {
            break;
        }
        delta = delta.add(&tower.scale(cn));
        tower = commutator_unchecked(&table, &phi, &tower);
    }
    delta.comps
}

/// D_k(X_j) = ∂/∂(k-th parameter) of δ(X_j).
pub fn derived_covariant_derivatives(case: Case, order: usize) -> [CovariantDerivative; 4] {
    let delta = infinitesimal_transformations(case, order);
    let kind = case.kind();
    let names = names(kind);
    std::array::from_fn(|k| {
        let terms = (0..4u8).map(|j| (coord(j), delta[j as usize].derivative(&param(k as u8)))).collect();
        CovariantDerivative::new(names[k].clone(), BASIS_GRADINGS[k], terms)
    })
}

/// Truncated generating function Σ_{n≤order} c_n xⁿ as a coordinate element.
pub fn f_element(kind: GradingKind, order: usize) -> Element {
    let mut f = Element::zero(kind);
    for (n, c) in bch_coefficients(order).into_iter().enumerate() {
        f = &f + &Element::monomial(kind, c, &vec![X; n]);
    }
    f
}

fn el(kind: GradingKind, c: Scalar, syms: &[Sym]) -> Element {
    Element::monomial(kind, c, syms)
}

/// The operators as printed for each case; for A8 the generating function
/// f(x) is truncated at `order`.
pub fn covariant_derivatives(case: Case, order: usize) -> [CovariantDerivative; 4] {
    let kind = case.kind();
    let n = names(kind);
    let one = |s: Sym| (s, Element::one(kind));
    let half = Scalar::frac(1, 2);
    let mhalf = Scalar::frac(-1, 2);
    let g = BASIS_GRADINGS;
    let (x, c1, c2, c3) = (coord(0), coord(1), coord(2), coord(3));
    let d = |k: usize, terms: Vec<(Sym, Element)>| CovariantDerivative::new(n[k].clone(), g[k], terms);
    match case {
        Case::S10 { eps } => [
            d(0, vec![one(x)]),
            d(1, vec![one(c1), (x, el(kind, &mhalf * &Scalar::int(eps), &[c1])), (c3, el(kind, half.clone(), &[c2]))]),
            d(2, vec![one(c2), (x, el(kind, mhalf.clone(), &[c2])), (c3, el(kind, mhalf, &[c1]))]),
            d(3, vec![one(c3)]),
        ],
        Case::A4 => [
            d(0, vec![one(x)]),
            d(1, vec![one(c1), (c3, el(kind, mhalf.clone(), &[c2]))]),
            d(2, vec![one(c2), (c3, el(kind, mhalf, &[c1]))]),
            d(3, vec![one(c3)]),
        ],
        Case::A8 => {
            let f = f_element(kind, order);
            let w3f = &Element::sym(kind, c3) * &f;
            let one_xf = &Element::one(kind) + &(&Element::sym(kind, x) * &f);
            [
                d(0, vec![one(x), (c3, -&w3f)]),
                d(1, vec![one(c1)]),
                d(2, vec![one(c2)]),
                d(3, vec![(c3, one_xf)]),
            ]
        }
    }
}

/// δ(X) as printed for each case.
pub fn printed_transformations(case: Case, order: usize) -> [Element; 4] {
    let kind = case.kind();
    let p = |k: u8| Element::sym(kind, param(k));
    let mhalf = Scalar::frac(-1, 2);
    match case {
        Case::S10 { eps } => [
            &(&p(0) + &el(kind, &mhalf * &Scalar::int(eps), &[param(1), coord(1)])) + &el(kind, mhalf.clone(), &[param(2), coord(2)]),
            p(1),
            p(2),
            &(&p(3) + &el(kind, mhalf, &[param(2), coord(1)])) + &el(kind, Scalar::frac(1, 2), &[param(1), coord(2)]),
        ],
        Case::A4 => [
            p(0),
            p(1),
            p(2),
            &(&p(3) + &el(kind, mhalf.clone(), &[param(2), coord(1)])) + &el(kind, mhalf, &[param(1), coord(2)]),
        ],
        Case::A8 => {
            let f = f_element(kind, order);
            let one_xf = &Element::one(kind) + &(&Element::sym(kind, X) * &f);
            [p(0), p(1), p(2), &(&p(3) * &one_xf) - &(&(&Element::sym(kind, coord(3)) * &f) * &p(0))]
        }
    }
}

/// Λ⁽⁰⁾ as printed for each case; for A8 this is (xδ3 − w2δ1)·Q3.
pub fn printed_lambda0(case: Case) -> Superfield {
    let kind = case.kind();
    let e = |c: i64, a: Sym, b: Sym| el(kind, Scalar::int(c), &[a, b]);
    let mut out = Superfield::zero(kind);
    match case {
        Case::S10 { eps } => {
            out.comps[0] = &e(-eps, coord(1), param(1)) + &e(-1, coord(2), param(2));
            out.comps[3] = &e(1, coord(1), param(2)) - &e(1, coord(2), param(1));
        }
        Case::A4 => out.comps[3] = &e(-1, coord(1), param(2)) + &e(-1, coord(2), param(1)),
        Case::A8 => out.comps[3] = &e(1, coord(0), param(3)) - &e(1, coord(2), param(1)),
    }
    out
}

/// The value of Λ⁽⁰⁾ that the printed A8 transformation δ(w3) requires:
/// (xδ3 − w3ε)·Q3.
pub fn corrected_a8_lambda0() -> Superfield {
    let kind = GradingKind::Z2Z2Algebra;
    let mut out = Superfield::zero(kind);
    out.comps[3] = &el(kind, Scalar::one(), &[coord(0), param(3)]) - &el(kind, Scalar::one(), &[coord(3), param(0)]);
    out
}

pub fn lambda0(case: Case) -> Superfield {
    let kind = case.kind();
    lambda_tower(&case.table(), &Superfield::at(kind, Point::Free), &Superfield::at(kind, Point::Param), 0)
}

/// Residual of one closure relation (D_i, D_j} = −Σ_k t_ijk D_k.
#[derive(Debug, Clone)]
pub struct ClosureResidual {
    pub i: usize,
    pub j: usize,
    /// The relation in words, e.g. `{D_θ,D_θ} = -1·D_x`.
    pub relation: String,
    /// First monomial on which the relation fails, with the residual.
    pub failure: Option<(Element, Element)>,
    pub monomials: usize,
}

impl ClosureResidual {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }

    pub fn is_trivial(&self, table: &BracketTable) -> bool {
        table.table[self.i][self.j].iter().all(Scalar::is_zero)
    }
}

/// Check every relation (D_i, D_j}, i ≤ j, on all coordinate monomials of
/// degree ≤ `degree`. With `x_cutoff = Some(n)`, residual terms of x-degree
/// ≥ n are discarded.
pub fn closure_residuals(
    case: Case,
    ds: &[CovariantDerivative; 4],
    degree: usize,
    x_cutoff: Option<usize>,
) -> Vec<ClosureResidual> {
    let kind = case.kind();
    let table = case.table();
    let monos = monomials_up_to(kind, Point::Free, degree);
    let pairs: Vec<(usize, usize)> = (0..4).flat_map(|i| (i..4).map(move |j| (i, j))).collect();
    pairs
        .into_par_iter()
        .map(|(i, j)| {
            let bracket = if sign_i32(kind, &BASIS_GRADINGS[i], &BASIS_GRADINGS[j]) == 1 { ('[', ']') } else { ('{', '}') };
            let rhs: Vec<String> = (0..4)
                .filter(|&k| !table.table[i][j][k].is_zero())
                .map(|k| format!("{}·{}", (-&table.table[i][j][k]).render(), ds[k].name))
                .collect();
            let relation = format!(
                "{}{},{}{} = {}",
                bracket.0,
                ds[i].name,
                ds[j].name,
                bracket.1,
                if rhs.is_empty() { "0".into() } else { rhs.join(" + ") }
            );
            let failure = monos.iter().find_map(|m| {
                let mut r = graded_bracket(kind, &ds[i], &ds[j], m);
                for k in 0..4 {
                    let t = &table.table[i][j][k];
                    if !t.is_zero() {
                        r = &r + &ds[k].apply(m).scale(t);
                    }
                }
                if let Some(n) = x_cutoff {
                    r = r.truncate_in(&X, n);
                }
                (!r.is_zero()).then(|| (m.clone(), r))
            });
            ClosureResidual { i, j, relation, failure, monomials: monos.len() }
        })
        .collect()
}

/// Closure of the printed operators; A8 is checked to x-degree `order − 1`.
pub fn case_closure(case: Case, order: usize, degree: usize) -> Vec<ClosureResidual> {
    let ds = covariant_derivatives(case, order);
    let cutoff = matches!(case, Case::A8).then_some(order);
    closure_residuals(case, &ds, degree, cutoff)
}

/// D(uv) − D(u)v − (−1)^{deg D · deg u} u D(v).
pub fn leibniz_residual(kind: GradingKind, d: &CovariantDerivative, u: &Element, v: &Element) -> Element {
    let lhs = d.apply(&(u * v));
    let first = &d.apply(u) * v;
    let second = u * &d.apply(v);
    let gu = u.grading().unwrap_or(GradingVector::G00);
    let second = if sign_i32(kind, &d.grading, &gu) == 1 { second } else { -&second };
    &(&lhs - &first) - &second
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_operators_close() {
        for case in Case::all() {
            for r in case_closure(case, 8, 4) {
                assert!(r.holds(), "{case}: {} fails on {:?}", r.relation, r.failure);
            }
        }
    }

    #[test]
    fn s10_relations_are_the_printed_ones() {
        let rels: Vec<String> = case_closure(Case::S10 { eps: 1 }, 0, 2)
            .into_iter()
            .filter(|r| !r.is_trivial(&Case::S10 { eps: 1 }.table()))
            .map(|r| r.relation)
            .collect();
        assert_eq!(rels, ["{D_θ,D_θ} = -1·D_x", "[D_θ,D_η] = -1·D_s", "{D_η,D_η} = -1·D_x"]);
    }

    #[test]
    fn derived_match_printed() {
        for case in Case::all() {
            assert_eq!(infinitesimal_transformations(case, 6), printed_transformations(case, 6), "{case}");
            assert_eq!(derived_covariant_derivatives(case, 6), covariant_derivatives(case, 6), "{case}");
        }
    }

    #[test]
    fn a8_printed_lambda0_is_off() {
        assert_ne!(lambda0(Case::A8), printed_lambda0(Case::A8));
        assert_eq!(lambda0(Case::A8), corrected_a8_lambda0());
        for case in [Case::S10 { eps: 1 }, Case::S10 { eps: -1 }, Case::A4] {
            assert_eq!(lambda0(case), printed_lambda0(case));
        }
    }

    #[test]
    fn broken_operator_fails_closure() {
        let mut ds = covariant_derivatives(Case::A4, 0);
        ds[1] = CovariantDerivative::new("D_w1", BASIS_GRADINGS[1], vec![(coord(1), Element::one(GradingKind::Z2Z2Algebra))]);
        assert!(closure_residuals(Case::A4, &ds, 3, None).iter().any(|r| !r.holds()));
    }

    #[test]
    fn case_names() {
        assert_eq!("a8".parse::<Case>().unwrap(), Case::A8);
        assert!("a9".parse::<Case>().is_err());
    }
}
