use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::kernel::{sign_i32, GradingKind, Scalar};
use crate::report::{Check, Report};
use crate::structure::{BracketTable, BASIS_GRADINGS};

use super::classical::s7_relations;

/// ∂ˣ∂ʸ-derivative of g (or of g* when `conj`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Func {
    pub conj: bool,
    pub dx: u8,
    pub dy: u8,
}

impl Func {
    pub const G: Func = Func { conj: false, dx: 0, dy: 0 };
    pub const G_STAR: Func = Func { conj: true, dx: 0, dy: 0 };

    pub fn name(&self) -> String {
        let mut s = String::from(if self.conj { "g*" } else { "g" });
        if self.dx + self.dy > 0 {
            s.push('_');
            s.push_str(&"x".repeat(self.dx as usize));
            s.push_str(&"y".repeat(self.dy as usize));
        }
        s
    }
}

/// Letters of operator words. In normal order all functions come first
/// (sorted), then ∂x's, then ∂y's.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Fun(Func),
    Dx,
    Dy,
}

pub type Word = Vec<Letter>;

/// Which out-of-order pair the rewriting picks first; the result must not
/// depend on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RewriteOrder {
    Leftmost,
    Rightmost,
}

/// Formal sum of operator words with scalar coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OpExpr {
    terms: BTreeMap<Word, Scalar>,
}

fn push(terms: &mut BTreeMap<Word, Scalar>, w: Word, c: Scalar) {
    if c.is_zero() {
        return;
    }
    let sum = match terms.remove(&w) {
        Some(old) => old + c,
        None => c,
    };
    if !sum.is_zero() {
        terms.insert(w, sum);
    }
}

fn normal_word(w: &[Letter], c: &Scalar, strategy: RewriteOrder, out: &mut BTreeMap<Word, Scalar>) {
    let mut bad = (0..w.len().saturating_sub(1)).filter(|&i| w[i] > w[i + 1]);
    let pos = match strategy {
        RewriteOrder::Leftmost => bad.next(),
        RewriteOrder::Rightmost => bad.last(),
    };
    let Some(i) = pos else {
        push(out, w.to_vec(), c.clone());
        return;
    };
    let mut swapped = w.to_vec();
    swapped.swap(i, i + 1);
    normal_word(&swapped, c, strategy, out);
    // ∂h = h∂ + h'
    if let (Letter::Dx | Letter::Dy, Letter::Fun(f)) = (w[i], w[i + 1]) {
        let df = if w[i] == Letter::Dx { Func { dx: f.dx + 1, ..f } } else { Func { dy: f.dy + 1, ..f } };
        let mut rest = w[..i].to_vec();
        rest.push(Letter::Fun(df));
        rest.extend_from_slice(&w[i + 2..]);
        normal_word(&rest, c, strategy, out);
    }
}

impl OpExpr {
    pub fn zero() -> Self {
        OpExpr::default()
    }

    pub fn scalar(c: Scalar) -> Self {
        Self::word(c, vec![])
    }

    pub fn word(c: Scalar, w: Word) -> Self {
        let mut terms = BTreeMap::new();
        push(&mut terms, w, c);
        OpExpr { terms }
    }

    pub fn letter(l: Letter) -> Self {
        Self::word(Scalar::one(), vec![l])
    }

    pub fn fun(f: Func) -> Self {
        Self::letter(Letter::Fun(f))
    }

    pub fn terms(&self) -> &BTreeMap<Word, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &OpExpr) -> OpExpr {
        let mut terms = self.terms.clone();
        for (w, c) in &o.terms {
            push(&mut terms, w.clone(), c.clone());
        }
        OpExpr { terms }
    }

    pub fn scale(&self, s: &Scalar) -> OpExpr {
        let mut terms = BTreeMap::new();
        for (w, c) in &self.terms {
            push(&mut terms, w.clone(), c * s);
        }
        OpExpr { terms }
    }

    pub fn sub(&self, o: &OpExpr) -> OpExpr {
        self.add(&o.scale(&Scalar::int(-1)))
    }

    /// Word concatenation without reordering.
    pub fn concat(&self, o: &OpExpr) -> OpExpr {
        let mut terms = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                push(&mut terms, w, x * y);
            }
        }
        OpExpr { terms }
    }

    pub fn normal_order_with(&self, strategy: RewriteOrder) -> OpExpr {
        let mut terms = BTreeMap::new();
        for (w, c) in &self.terms {
            normal_word(w, c, strategy, &mut terms);
        }
        OpExpr { terms }
    }

    pub fn normal_order(&self) -> OpExpr {
        self.normal_order_with(RewriteOrder::Leftmost)
    }

    pub fn is_normal(&self) -> bool {
        self.terms.keys().all(|w| w.windows(2).all(|p| p[0] <= p[1]))
    }

    /// Product in normal form.
    pub fn mul(&self, o: &OpExpr) -> OpExpr {
        self.concat(o).normal_order()
    }

    /// ∂ ↦ −∂, g ↔ g*, scalars conjugated, words reversed; normal-ordered.
    pub fn adjoint(&self) -> OpExpr {
        let mut terms = BTreeMap::new();
        for (w, c) in &self.terms {
            let mut c = c.conj();
            let mut r = Vec::with_capacity(w.len());
            for l in w.iter().rev() {
                match l {
                    Letter::Fun(f) => r.push(Letter::Fun(Func { conj: !f.conj, ..*f })),
                    d => {
                        c = -c;
                        r.push(*d);
                    }
                }
            }
            push(&mut terms, r, c);
        }
        OpExpr { terms }.normal_order()
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            let letters: Vec<String> = w
                .iter()
                .map(|l| match l {
                    Letter::Fun(f) => f.name(),
                    Letter::Dx => "∂x".into(),
                    Letter::Dy => "∂y".into(),
                })
                .collect();
            if w.is_empty() {
                out.push_str(&c.render());
            } else {
                let _ = write!(out, "({})·{}", c.render(), letters.join("·"));
            }
        }
        out
    }
}

/// 4×4 matrix with operator entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpMatrix {
    pub entries: [[OpExpr; 4]; 4],
}

impl OpMatrix {
    pub fn zero() -> Self {
        OpMatrix { entries: std::array::from_fn(|_| std::array::from_fn(|_| OpExpr::zero())) }
    }

    /// 1-indexed (row, column, entry) triples.
    pub fn from_entries(es: &[(usize, usize, OpExpr)]) -> Self {
        let mut m = Self::zero();
        for (r, c, e) in es {
            m.entries[r - 1][c - 1] = m.entries[r - 1][c - 1].add(e);
        }
        m
    }

    pub fn map(&self, f: impl Fn(&OpExpr) -> OpExpr) -> Self {
        OpMatrix { entries: std::array::from_fn(|i| std::array::from_fn(|j| f(&self.entries[i][j]))) }
    }

    pub fn add(&self, o: &OpMatrix) -> Self {
        OpMatrix { entries: std::array::from_fn(|i| std::array::from_fn(|j| self.entries[i][j].add(&o.entries[i][j]))) }
    }

    pub fn sub(&self, o: &OpMatrix) -> Self {
        OpMatrix { entries: std::array::from_fn(|i| std::array::from_fn(|j| self.entries[i][j].sub(&o.entries[i][j]))) }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        self.map(|e| e.scale(s))
    }

    pub fn mul(&self, o: &OpMatrix) -> Self {
        OpMatrix {
            entries: std::array::from_fn(|i| {
                std::array::from_fn(|j| (0..4).fold(OpExpr::zero(), |acc, k| acc.add(&self.entries[i][k].concat(&o.entries[k][j]))).normal_order())
            }),
        }
    }

    pub fn normal_order(&self) -> Self {
        self.map(OpExpr::normal_order)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|e| e.normal_order().is_zero())
    }

    /// Transpose with entrywise adjoint.
    pub fn adjoint(&self) -> Self {
        OpMatrix { entries: std::array::from_fn(|i| std::array::from_fn(|j| self.entries[j][i].adjoint())) }
    }

    pub fn render(&self) -> String {
        let mut parts = Vec::new();
        for i in 0..4 {
            for j in 0..4 {
                let e = self.entries[i][j].normal_order();
                if !e.is_zero() {
                    parts.push(format!("[{}{}] {}", i + 1, j + 1, e.render()));
                }
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("; ")
        }
    }
}

fn d(l: Letter) -> OpExpr {
    OpExpr::letter(l)
}

fn s(n: i64) -> Scalar {
    Scalar::int(n)
}

/// H, Q10, Q01, Z of the quantum S7 model with c = cos²γ and formal g, g*.
pub fn quantum_s7_operators(c: &Scalar) -> [OpMatrix; 4] {
    let i = Scalar::i();
    let mi = -&i;
    let g = OpExpr::fun(Func::G);
    let gs = OpExpr::fun(Func::G_STAR);
    let f = |conj: bool, dx: u8, dy: u8| OpExpr::fun(Func { conj, dx, dy });
    // A = ∂x − i∂y + g, B = −∂x − i∂y + g*
    let a = d(Letter::Dx).add(&d(Letter::Dy).scale(&mi)).add(&g);
    let b = d(Letter::Dx).scale(&s(-1)).add(&d(Letter::Dy).scale(&mi)).add(&gs);
    let lap = d(Letter::Dx).concat(&d(Letter::Dx)).add(&d(Letter::Dy).concat(&d(Letter::Dy))).scale(&s(-1));
    let common = lap
        .add(&gs.sub(&g).concat(&d(Letter::Dx)))
        .add(&g.add(&gs).concat(&d(Letter::Dy)).scale(&mi))
        .add(&g.concat(&gs));
    let h11 = common.add(&f(true, 1, 0)).add(&f(true, 0, 1).scale(&mi));
    let h33 = common.sub(&f(false, 1, 0)).add(&f(false, 0, 1).scale(&mi));
    let sc = OpExpr::scalar(c.clone());
    let sn = OpExpr::scalar(&Scalar::one() - c);
    [
        OpMatrix::from_entries(&[(1, 1, h11.clone()), (2, 2, h11), (3, 3, h33.clone()), (4, 4, h33)]),
        OpMatrix::from_entries(&[(1, 3, a.clone()), (2, 4, a.clone()), (3, 1, b.clone()), (4, 2, b.clone())]),
        OpMatrix::from_entries(&[(1, 4, a.clone()), (2, 3, a), (3, 2, b.clone()), (4, 1, b)]),
        OpMatrix::from_entries(&[(1, 2, sc.clone()), (2, 1, sc), (3, 4, sn.clone()), (4, 3, sn)]),
    ]
}

pub const QUANTUM_NAMES: [&str; 4] = ["H", "Q10", "Q01", "Z"];

/// Residual (G_i, G_j} − Σ_k t_ijk G_k, normal-ordered.
pub fn bracket_residual(ops: &[OpMatrix; 4], table: &BracketTable, i: usize, j: usize) -> OpMatrix {
    let ab = ops[i].mul(&ops[j]);
    let ba = ops[j].mul(&ops[i]);
    let mut r = if sign_i32(GradingKind::Z2Z2Superalgebra, &BASIS_GRADINGS[i], &BASIS_GRADINGS[j]) == 1 { ab.sub(&ba) } else { ab.add(&ba) };
    for k in 0..4 {
        let t = &table.table[i][j][k];
        if !t.is_zero() {
            r = r.sub(&ops[k].scale(t));
        }
    }
    r.normal_order()
}

fn relation_name(table: &BracketTable, i: usize, j: usize) -> String {
    let comm = sign_i32(GradingKind::Z2Z2Superalgebra, &BASIS_GRADINGS[i], &BASIS_GRADINGS[j]) == 1;
    let (o, c) = if comm { ("[", "]") } else { ("{", "}") };
    let rhs: Vec<String> = (0..4)
        .filter(|&k| !table.table[i][j][k].is_zero())
        .map(|k| format!("{}·{}", table.table[i][j][k].render(), QUANTUM_NAMES[k]))
        .collect();
    format!("{o}{},{}{c} = {}", QUANTUM_NAMES[i], QUANTUM_NAMES[j], if rhs.is_empty() { "0".into() } else { rhs.join(" + ") })
}

/// Polynomial in x, y with exact coefficients, keyed by exponents.
pub type P2 = BTreeMap<(u32, u32), Scalar>;

fn p2_add(a: &mut P2, k: (u32, u32), c: Scalar) {
    push_p2(a, k, c)
}

fn push_p2(a: &mut P2, k: (u32, u32), c: Scalar) {
    if c.is_zero() {
        return;
    }
    let sum = match a.remove(&k) {
        Some(o) => o + c,
        None => c,
    };
    if !sum.is_zero() {
        a.insert(k, sum);
    }
}

pub fn p2_mul(a: &P2, b: &P2) -> P2 {
    let mut out = P2::new();
    for ((i, j), x) in a {
        for ((k, l), y) in b {
            p2_add(&mut out, (i + k, j + l), x * y);
        }
    }
    out
}

pub fn p2_diff(a: &P2, x: bool) -> P2 {
    let mut out = P2::new();
    for (&(i, j), c) in a {
        let (e, k) = if x { (i, (i.wrapping_sub(1), j)) } else { (j, (i, j.wrapping_sub(1))) };
        if e > 0 {
            p2_add(&mut out, k, c * &Scalar::int(e as i64));
        }
    }
    out
}

/// Multiplication operators for g and its derivatives, with g* obtained by
/// conjugating the coefficients (x, y real).
#[derive(Debug, Clone)]
pub struct ConcreteG {
    pub g: P2,
}

impl ConcreteG {
    /// g = x + 2y.
    pub fn linear() -> Self {
        ConcreteG { g: [((1, 0), s(1)), ((0, 1), s(2))].into_iter().collect() }
    }

    fn func(&self, f: &Func) -> P2 {
        let mut p = self.g.clone();
        for _ in 0..f.dx {
            p = p2_diff(&p, true);
        }
        for _ in 0..f.dy {
            p = p2_diff(&p, false);
        }
        if f.conj {
            p = p.into_iter().map(|(k, c)| (k, c.conj())).collect();
        }
        p
    }

    /// Act with one word, letters applied right to left.
    pub fn act_word(&self, w: &[Letter], p: &P2) -> P2 {
        let mut cur = p.clone();
        for l in w.iter().rev() {
            cur = match l {
                Letter::Dx => p2_diff(&cur, true),
                Letter::Dy => p2_diff(&cur, false),
                Letter::Fun(f) => p2_mul(&self.func(f), &cur),
            };
        }
        cur
    }

    pub fn act(&self, e: &OpExpr, p: &P2) -> P2 {
        let mut out = P2::new();
        for (w, c) in e.terms() {
            for (k, v) in self.act_word(w, p) {
                p2_add(&mut out, k, &v * c);
            }
        }
        out
    }

    pub fn act_matrix(&self, m: &OpMatrix, v: &[P2; 4]) -> [P2; 4] {
        std::array::from_fn(|i| {
            let mut out = P2::new();
            for j in 0..4 {
                for (k, c) in self.act(&m.entries[i][j], &v[j]) {
                    p2_add(&mut out, k, c);
                }
            }
            out
        })
    }
}

/// Relation residual evaluated by composing the concrete actions, without
/// normal ordering, on every e_r·xᵃyᵇ with a + b ≤ `degree`. Returns the
/// first failing test vector.
pub fn oracle_residual(ops: &[OpMatrix; 4], table: &BracketTable, g: &ConcreteG, i: usize, j: usize, degree: u32) -> Option<String> {
    let comm = sign_i32(GradingKind::Z2Z2Superalgebra, &BASIS_GRADINGS[i], &BASIS_GRADINGS[j]) == 1;
    for r in 0..4 {
        for a in 0..=degree {
            for b in 0..=(degree - a) {
                let mut v: [P2; 4] = std::array::from_fn(|_| P2::new());
                v[r].insert((a, b), Scalar::one());
                let ab = g.act_matrix(&ops[i], &g.act_matrix(&ops[j], &v));
                let ba = g.act_matrix(&ops[j], &g.act_matrix(&ops[i], &v));
                let mut res: [P2; 4] = std::array::from_fn(|q| {
                    let mut out = ab[q].clone();
                    for (k, c) in &ba[q] {
                        p2_add(&mut out, *k, if comm { -c } else { c.clone() });
                    }
                    out
                });
                for k in 0..4 {
                    let t = &table.table[i][j][k];
                    if t.is_zero() {
                        continue;
                    }
                    let gv = g.act_matrix(&ops[k], &v);
                    for q in 0..4 {
                        for (key, c) in &gv[q] {
                            p2_add(&mut res[q], *key, -(c * t));
                        }
                    }
                }
                if res.iter().any(|p| !p.is_empty()) {
                    return Some(format!("on e{}·x^{a}y^{b}: {res:?}", r + 1));
                }
            }
        }
    }
    None
}

/// Closure and Hermiticity of the quantum S7 operators at c = cos²γ, plus
/// the concrete g = x + 2y cross-check on monomials of degree ≤ 5.
pub fn quantum_s7(c: &Scalar) -> Report {
    let ops = quantum_s7_operators(c);
    let table = BracketTable::superalgebra(&s7_relations());
    let mut rep = Report::new();
    let in_range = c.is_real() && !c.is_negative_real() && !(&Scalar::one() - c).is_negative_real();
    if !in_range {
        rep.push(Check::inconclusive(format!("cos²γ = {} lies outside [0,1]", c.render()), "only c and 1 − c enter the operators"));
    }
    let oracle = ConcreteG::linear();
    for i in 0..4 {
        for j in i..4 {
            let name = relation_name(&table, i, j);
            let r = bracket_residual(&ops, &table, i, j);
            rep.push(
                Check::from_bool(format!("S7 quantum (c = {}): {name}", c.render()), r.is_zero(), r.render())
                    .anchor("quantum operators close the S7 superalgebra"),
            );
            let o = oracle_residual(&ops, &table, &oracle, i, j, 5);
            rep.push(
                Check::from_bool(
                    format!("S7 quantum (c = {}): {name} with g = x + 2y on monomials of degree <= 5", c.render()),
                    o.is_none(),
                    o.unwrap_or_default(),
                )
                .anchor("quantum operators close the S7 superalgebra"),
            );
        }
    }
    for (k, op) in ops.iter().enumerate() {
        let r = op.adjoint().sub(op).normal_order();
        rep.push(
            Check::from_bool(format!("S7 quantum (c = {}): {} is Hermitian", c.render(), QUANTUM_NAMES[k]), r.is_zero(), r.render())
                .anchor("the quantum operators are Hermitian"),
        );
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(letters: &[Letter]) -> OpExpr {
        OpExpr::word(Scalar::one(), letters.to_vec())
    }

    #[test]
    fn defining_rewrite() {
        let g = Letter::Fun(Func::G);
        let gx = Letter::Fun(Func { dx: 1, ..Func::G });
        let gxx = Letter::Fun(Func { dx: 2, ..Func::G });
        assert_eq!(w(&[Letter::Dx, g]).normal_order(), w(&[g, Letter::Dx]).add(&w(&[gx])));
        assert_eq!(w(&[Letter::Dx, g, Letter::Dx]).normal_order(), w(&[g, Letter::Dx, Letter::Dx]).add(&w(&[gx, Letter::Dx])));
        // ∂x² g = g∂x² + 2g_x∂x + g_xx
        let lhs = w(&[Letter::Dx, Letter::Dx, g]).normal_order();
        let rhs = w(&[g, Letter::Dx, Letter::Dx]).add(&w(&[gx, Letter::Dx]).scale(&s(2))).add(&w(&[gxx]));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn strategies_agree() {
        let g = Letter::Fun(Func::G);
        let gs = Letter::Fun(Func::G_STAR);
        let e = w(&[Letter::Dy, Letter::Dx, g, Letter::Dy, gs, Letter::Dx, g]);
        assert_eq!(e.normal_order_with(RewriteOrder::Leftmost), e.normal_order_with(RewriteOrder::Rightmost));
        assert!(e.normal_order().is_normal());
    }

    #[test]
    fn adjoint_rules() {
        let e = w(&[Letter::Dx]).add(&OpExpr::fun(Func::G).scale(&Scalar::i()));
        assert_eq!(e.adjoint(), w(&[Letter::Dx]).scale(&s(-1)).add(&OpExpr::fun(Func::G_STAR).scale(&-Scalar::i())));
        assert_eq!(e.adjoint().adjoint(), e);
    }

    #[test]
    fn closes_for_sample_c() {
        for c in [Scalar::zero(), Scalar::frac(1, 4), Scalar::frac(1, 2), Scalar::one()] {
            let r = quantum_s7(&c);
            assert!(r.ok(), "{}", r.to_text());
        }
    }

    #[test]
    fn broken_hamiltonian_is_caught() {
        let mut ops = quantum_s7_operators(&Scalar::frac(1, 4));
        ops[0].entries[0][0] = ops[0].entries[0][0].add(&OpExpr::fun(Func { dx: 1, ..Func::G }));
        let table = BracketTable::superalgebra(&s7_relations());
        assert!(!bracket_residual(&ops, &table, 1, 1).is_zero());
        assert!(oracle_residual(&ops, &table, &ConcreteG::linear(), 1, 1, 3).is_some());
    }
}
