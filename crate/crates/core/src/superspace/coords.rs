use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::ops::{Add, Mul, Neg, Sub};

use crate::kernel::{inner_product, sign_i32, GradingKind, GradingVector, Scalar};
use crate::structure::BASIS_GRADINGS;

/// Which copy of the coordinates a symbol belongs to. `Param` holds the
/// infinitesimal parameters of Λ and sorts first, so monomials read
/// parameter-first like δ₁w₂.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Point {
    Param,
    Free,
    A,
    B,
}

/// Coordinate symbol: slot k carries the grading of the k-th generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sym {
    pub point: Point,
    pub slot: u8,
}

const ALGEBRA_COORDS: [&str; 4] = ["x", "w1", "w2", "w3"];
const SUPER_COORDS: [&str; 4] = ["x", "θ", "η", "s"];
const ALGEBRA_PARAMS: [&str; 4] = ["ε", "δ1", "δ2", "δ3"];
const SUPER_PARAMS: [&str; 4] = ["ε", "ν", "ρ", "σ"];

impl Sym {
    pub const fn new(point: Point, slot: u8) -> Self {
        Sym { point, slot }
    }

    pub fn grading(&self) -> GradingVector {
        BASIS_GRADINGS[self.slot as usize]
    }

    pub fn name(&self, kind: GradingKind) -> String {
        let s = self.slot as usize;
        let superalgebra = kind == GradingKind::Z2Z2Superalgebra;
        match self.point {
            Point::Param => (if superalgebra { SUPER_PARAMS } else { ALGEBRA_PARAMS })[s].to_string(),
            p => {
                let base = (if superalgebra { SUPER_COORDS } else { ALGEBRA_COORDS })[s];
                match p {
                    Point::A => format!("{base}^A"),
                    Point::B => format!("{base}^B"),
                    _ => base.to_string(),
                }
            }
        }
    }
}

/// Symbols of a free graded-commutative polynomial algebra.
pub trait GradedSymbol: Clone + Ord + fmt::Debug + Send + Sync {
    fn grading(&self) -> GradingVector;
    fn name(&self, kind: GradingKind) -> String;
}

impl GradedSymbol for Sym {
    fn grading(&self) -> GradingVector {
        Sym::grading(self)
    }
    fn name(&self, kind: GradingKind) -> String {
        Sym::name(self, kind)
    }
}

pub type Monomial<S = Sym> = Vec<S>;

fn monomial_grading<S: GradedSymbol>(m: &[S]) -> GradingVector {
    m.iter().fold(GradingVector::G00, |g, s| g.try_add(&s.grading()).expect("z2z2 gradings"))
}

/// Sort into canonical order, returning the sign picked up by the swaps, or
/// `None` if a self-anticommuting symbol repeats.
fn normalize<S: GradedSymbol>(kind: GradingKind, mut m: Vec<S>) -> Option<(Vec<S>, i32)> {
    let mut sign = 1;
    for i in 1..m.len() {
        let mut j = i;
        while j > 0 && m[j - 1] > m[j] {
            sign *= sign_i32(kind, &m[j - 1].grading(), &m[j].grading());
            m.swap(j - 1, j);
            j -= 1;
        }
    }
    for w in m.windows(2) {
        if w[0] == w[1] && inner_product(kind, &w[0].grading(), &w[0].grading()).expect("z2z2 grading") == 1 {
            return None;
        }
    }
    Some((m, sign))
}

/// Element of the free graded-commutative algebra on symbols `S`; monomials
/// are kept sorted with the sign of the sorting permutation absorbed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPoly<S: GradedSymbol> {
    kind: GradingKind,
    terms: BTreeMap<Vec<S>, Scalar>,
}

/// Superspace coordinate element.
pub type Element = GradedPoly<Sym>;

impl<S: GradedSymbol> GradedPoly<S> {
    pub fn zero(kind: GradingKind) -> Self {
        GradedPoly { kind, terms: BTreeMap::new() }
    }

    pub fn constant(kind: GradingKind, c: Scalar) -> Self {
        let mut e = Self::zero(kind);
        e.add_term(Vec::new(), c);
        e
    }

    pub fn one(kind: GradingKind) -> Self {
        Self::constant(kind, Scalar::one())
    }

    pub fn sym(kind: GradingKind, s: S) -> Self {
        let mut e = Self::zero(kind);
        e.add_term(vec![s], Scalar::one());
        e
    }

    /// c · s₁s₂⋯ for symbols in any order.
    pub fn monomial(kind: GradingKind, c: Scalar, syms: &[S]) -> Self {
        let mut e = Self::zero(kind);
        e.add_term(syms.to_vec(), c);
        e
    }

    pub fn kind(&self) -> GradingKind {
        self.kind
    }

    pub fn terms(&self) -> &BTreeMap<Vec<S>, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the monomial `syms` (given in any order).
    pub fn coeff(&self, syms: &[S]) -> Scalar {
        match normalize(self.kind, syms.to_vec()) {
            Some((m, sign)) => {
                let c = self.terms.get(&m).cloned().unwrap_or_default();
                if sign == 1 {
                    c
                } else {
                    -c
                }
            }
            None => Scalar::zero(),
        }
    }

    pub fn add_term(&mut self, m: Vec<S>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let Some((m, sign)) = normalize(self.kind, m) else { return };
        let c = if sign == 1 { c } else { -c };
        let sum = match self.terms.remove(&m) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(m, sum);
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.kind);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a * c);
        }
        out
    }

    /// Common grading of all terms; `None` for zero or mixed elements.
    pub fn grading(&self) -> Option<GradingVector> {
        let mut it = self.terms.keys().map(|m| monomial_grading(m));
        let g = it.next()?;
        it.all(|h| h == g).then_some(g)
    }

    /// Extend a map on symbols to a graded derivation of degree `g`: acting
    /// on the i-th factor costs (−1)^{g · deg(factors before it)}.
    pub fn derivation(&self, g: &GradingVector, f: impl Fn(&S) -> Option<GradedPoly<S>>) -> Self {
        let mut out = Self::zero(self.kind);
        for (m, c) in &self.terms {
            let mut prefix = GradingVector::G00;
            for (i, t) in m.iter().enumerate() {
                if let Some(d) = f(t) {
                    if !d.is_zero() {
                        let c = if sign_i32(self.kind, g, &prefix) == 1 { c.clone() } else { -c };
                        for (dm, dc) in &d.terms {
                            let mut w = m[..i].to_vec();
                            w.extend_from_slice(dm);
                            w.extend_from_slice(&m[i + 1..]);
                            out.add_term(w, &c * dc);
                        }
                    }
                }
                prefix = prefix.try_add(&t.grading()).expect("z2z2 gradings");
            }
        }
        out
    }

    /// Graded left derivative ∂/∂s: passing s over a prefix u costs
    /// (−1)^{deg s · deg u}.
    pub fn derivative(&self, s: &S) -> Self {
        let kind = self.kind;
        self.derivation(&s.grading(), |t| (t == s).then(|| Self::one(kind)))
    }

    pub fn degree_in(m: &[S], s: &S) -> usize {
        m.iter().filter(|t| *t == s).count()
    }

    /// Drop every term whose degree in `s` is at least `n`.
    pub fn truncate_in(&self, s: &S, n: usize) -> Self {
        GradedPoly {
            kind: self.kind,
            terms: self.terms.iter().filter(|(m, _)| Self::degree_in(m, s) < n).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            let syms: Vec<String> = m.iter().map(|s| s.name(self.kind)).collect();
            if m.is_empty() {
                out.push_str(&c.render());
            } else if c.is_one() {
                out.push_str(&syms.join("·"));
            } else {
                let _ = write!(out, "{}·{}", c.render(), syms.join("·"));
            }
        }
        out
    }
}

impl GradedPoly<Sym> {
    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        self.terms.keys().flatten().map(|s| s.point)
    }
}

impl<S: GradedSymbol> fmt::Display for GradedPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<S: GradedSymbol> Add for &GradedPoly<S> {
    type Output = GradedPoly<S>;
    fn add(self, rhs: &GradedPoly<S>) -> GradedPoly<S> {
        assert_eq!(self.kind, rhs.kind, "mixed grading kinds");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<S: GradedSymbol> Neg for &GradedPoly<S> {
    type Output = GradedPoly<S>;
    fn neg(self) -> GradedPoly<S> {
        self.scale(&Scalar::int(-1))
    }
}

impl<S: GradedSymbol> Sub for &GradedPoly<S> {
    type Output = GradedPoly<S>;
    fn sub(self, rhs: &GradedPoly<S>) -> GradedPoly<S> {
        self + &(-rhs)
    }
}

impl<S: GradedSymbol> Mul for &GradedPoly<S> {
    type Output = GradedPoly<S>;
    fn mul(self, rhs: &GradedPoly<S>) -> GradedPoly<S> {
        assert_eq!(self.kind, rhs.kind, "mixed grading kinds");
        let mut out = GradedPoly::zero(self.kind);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let mut m = a.clone();
                m.extend_from_slice(b);
                out.add_term(m, x * y);
            }
        }
        out
    }
}

/// All products of the four `point` coordinates of total degree ≤ `max`,
/// skipping those that vanish.
pub fn monomials_up_to(kind: GradingKind, point: Point, max: usize) -> Vec<Element> {
    fn rec(kind: GradingKind, point: Point, from: u8, left: usize, cur: &mut Vec<Sym>, out: &mut Vec<Element>) {
        let e = Element::monomial(kind, Scalar::one(), cur);
        if !e.is_zero() {
            out.push(e);
        }
        if left == 0 {
            return;
        }
        for k in from..4 {
            cur.push(Sym::new(point, k));
            rec(kind, point, k, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(kind, point, 0, max, &mut Vec::new(), &mut out);
    out
}
