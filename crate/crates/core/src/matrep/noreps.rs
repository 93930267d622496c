//! Bounded search for 4×4 representations of the three cases without a
//! printed one: A5, A6_x (x ≠ 1/2) and S13_ε.
//!
//! The odd generators are placed in the standard sectors (10, 01, 11). For
//! algebras this loses nothing: any permutation of the nonzero degrees is
//! realized by permuting the basis vectors.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::matrix::{entry_sector, GradedMatrix};
use super::rep::{verify_rep, Representation};
use super::ring::Ring;
use super::MatrepError;
use crate::kernel::Scalar;
use crate::report::Check;
use crate::structure::{table_entry, BracketTable, Constants, Family, TableLabel, BASIS_GRADINGS};

pub const DEFAULT_BUDGET: usize = 1 << 16;

// ---- sparse polynomials ---------------------------------------------------

/// Sparse polynomial over [`Scalar`]; a monomial is its sorted variable list.
#[derive(Clone, PartialEq, Default)]
pub struct Poly(BTreeMap<Vec<usize>, Scalar>);

impl std::fmt::Debug for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.render())
    }
}

impl Poly {
    pub fn var(i: usize) -> Self {
        Poly(BTreeMap::from([(vec![i], Scalar::one())]))
    }

    fn insert(&mut self, m: Vec<usize>, c: Scalar) {
        let v = self.0.get(&m).map_or(c.clone(), |x| x + &c);
        if v.is_zero() {
            self.0.remove(&m);
        } else {
            self.0.insert(m, v);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Scalar)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Drop every monomial containing a variable outside `alive`.
    fn restrict(&self, alive: impl Fn(usize) -> bool) -> Poly {
        Poly(self.0.iter().filter(|(m, _)| m.iter().all(|v| alive(*v))).map(|(m, c)| (m.clone(), c.clone())).collect())
    }

    /// Substitute known values; unknown variables stay symbolic.
    fn substitute(&self, val: &dyn Fn(usize) -> Option<Scalar>) -> Poly {
        let mut out = Poly::default();
        for (m, c) in &self.0 {
            let mut coef = c.clone();
            let mut rest = Vec::new();
            for v in m {
                match val(*v) {
                    Some(x) => coef = &coef * &x,
                    None => rest.push(*v),
                }
            }
            if !coef.is_zero() {
                out.insert(rest, coef);
            }
        }
        out
    }

    /// Coefficients and constant of an affine polynomial, if it is one.
    fn affine(&self) -> Option<(BTreeMap<usize, Scalar>, Scalar)> {
        let mut lin = BTreeMap::new();
        let mut c0 = Scalar::zero();
        for (m, c) in &self.0 {
            match m.len() {
                0 => c0 = c.clone(),
                1 => {
                    lin.insert(m[0], c.clone());
                }
                _ => return None,
            }
        }
        Some((lin, c0))
    }
}

impl Ring for Poly {
    fn zero() -> Self {
        Poly::default()
    }
    fn one() -> Self {
        Poly::from_scalar(&Scalar::one())
    }
    fn from_scalar(s: &Scalar) -> Self {
        let mut p = Poly::default();
        if !s.is_zero() {
            p.0.insert(vec![], s.clone());
        }
        p
    }
    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.0 {
            out.insert(m.clone(), c.clone());
        }
        out
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        let mut out = Poly::default();
        for (m1, c1) in &self.0 {
            for (m2, c2) in &o.0 {
                let mut m: Vec<usize> = m1.iter().chain(m2).copied().collect();
                m.sort_unstable();
                out.insert(m, c1 * c2);
            }
        }
        out
    }
    fn neg(&self) -> Self {
        Poly(self.0.iter().map(|(m, c)| (m.clone(), -c)).collect())
    }
    fn render(&self) -> String {
        if self.0.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(m, c)| {
                let vars: Vec<String> = m.iter().map(|v| format!("x{v}")).collect();
                match (c.is_one(), vars.is_empty()) {
                    (_, true) => c.render(),
                    (true, false) => vars.join("*"),
                    (false, false) => format!("({})*{}", c.render(), vars.join("*")),
                }
            })
            .collect();
        parts.join(" + ")
    }
}

// ---- exact linear algebra -------------------------------------------------

/// Solve `Σ a_ij x_j = b_i` exactly. Returns a particular solution (free
/// variables set to `free`) and the number of free variables, or `None` if
/// the system is inconsistent.
pub fn solve_linear(rows: &[(Vec<Scalar>, Scalar)], n: usize, free: &Scalar) -> Option<(Vec<Scalar>, usize)> {
    let mut a: Vec<Vec<Scalar>> = rows.iter().map(|(r, b)| r.iter().cloned().chain([b.clone()]).collect()).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..a.len()).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(row, p);
        let inv = a[row][col].inv().expect("nonzero pivot");
        for v in a[row].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..a.len() {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..=n {
                    let t = &a[row][c] * &f;
                    a[r][c] -= &t;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if a[row..].iter().any(|r| !r[n].is_zero()) {
        return None;
    }
    let mut x = vec![free.clone(); n];
    for (r, &pc) in pivots.iter().enumerate() {
        let mut v = a[r][n].clone();
        for c in 0..n {
            if c != pc && !pivots.contains(&c) {
                v -= &(&a[r][c] * free);
            }
        }
        x[pc] = v;
    }
    Some((x, n - pivots.len()))
}

// ---- the search -----------------------------------------------------------

/// Why one support pattern admits no representation.
#[derive(Debug, Clone, PartialEq)]
pub struct Refutation {
    /// Nonzero entries of the three odd generators, as bit masks over their
    /// four sector positions.
    pub supports: [u8; 3],
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ProofTrace {
    /// A graded Jacobi residual `r·g_k` forces `r·M_k = 0` on any
    /// representation, since matrices satisfy the graded Jacobi identity.
    JacobiForcing { triple: (usize, usize, usize), generator: String, coefficient: Scalar },
    /// Every support pattern of the odd generators leads to a contradiction.
    Exhaustive { refutations: Vec<Refutation> },
}

#[derive(Debug, Clone, PartialEq)]
pub enum NoRepOutcome {
    Proven(ProofTrace),
    Inconclusive { explored: usize, unresolved: Vec<[u8; 3]>, reason: String },
    /// A representation with four nonzero matrices, checked exactly.
    Counterexample(Box<Representation>),
}

impl NoRepOutcome {
    pub fn certificate(&self) -> Value {
        match self {
            NoRepOutcome::Proven(ProofTrace::JacobiForcing { triple, generator, coefficient }) => json!({
                "method": "graded Jacobi forcing",
                "triple": [triple.0, triple.1, triple.2],
                "forced_zero": generator,
                "coefficient": coefficient.render(),
            }),
            NoRepOutcome::Proven(ProofTrace::Exhaustive { refutations }) => json!({
                "method": "support pattern exhaustion",
                "patterns": refutations.len(),
                "refutations": refutations.iter().map(|r| json!({"supports": r.supports, "reason": r.reason})).collect::<Vec<_>>(),
            }),
            NoRepOutcome::Inconclusive { explored, unresolved, reason } => json!({
                "explored": explored,
                "unresolved": unresolved,
                "reason": reason,
            }),
            NoRepOutcome::Counterexample(rep) => json!({ "counterexample": rep.to_json() }),
        }
    }

    pub fn to_check(&self, label: &TableLabel) -> Check {
        let name = format!("{label}: no 4x4 representation with four nonzero matrices");
        let c = match self {
            NoRepOutcome::Proven(_) => Check::pass(name),
            NoRepOutcome::Inconclusive { reason, .. } => Check::inconclusive(name, reason.clone()),
            NoRepOutcome::Counterexample(_) => Check::fail(name, "an exact representation exists"),
        };
        c.anchor("at least one of the four matrices is identically zero").certificate(self.certificate())
    }
}

pub fn is_exceptional(label: &TableLabel) -> bool {
    match label.family {
        Family::A(5) | Family::S(13) => true,
        Family::A(6) => label.params.first() != Some(&Scalar::frac(1, 2)),
        _ => false,
    }
}

/// 0-indexed positions of the pattern of sector `BASIS_GRADINGS[k]`.
fn positions(k: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for r in 0..4 {
        for c in 0..4 {
            if entry_sector(4, r, c).expect("4x4") == BASIS_GRADINGS[k] {
                out.push((r, c));
            }
        }
    }
    out
}

/// Variable numbering: h_r is r, entry s of odd generator k is 4k + s.
fn var_of(k: usize, s: usize) -> usize {
    4 * k + s
}

fn var_name(v: usize, names: &[&str; 4]) -> String {
    if v < 4 {
        format!("h{}", v + 1)
    } else {
        let (k, s) = (v / 4, v % 4);
        let (r, c) = positions(k)[s];
        format!("{}[{},{}]", names[k], r + 1, c + 1)
    }
}

fn symbolic_rep(constants: &Constants) -> Representation<Poly> {
    let h = GradedMatrix::diag(&[Poly::var(0), Poly::var(1), Poly::var(2), Poly::var(3)]);
    let odd = |k: usize| {
        let mut m = GradedMatrix::zeros(4);
        for (s, (r, c)) in positions(k).into_iter().enumerate() {
            m.set(r, c, Poly::var(var_of(k, s)));
        }
        m
    };
    Representation::new(constants.clone(), [h, odd(1), odd(2), odd(3)])
}

fn render_eq(p: &Poly, names: &[&str; 4]) -> String {
    let parts: Vec<String> = p
        .terms()
        .map(|(m, c)| {
            let vars: Vec<String> = m.iter().map(|v| var_name(*v, names)).collect();
            match (c.is_one(), vars.is_empty()) {
                (_, true) => c.render(),
                (true, false) => vars.join("·"),
                (false, false) => format!("({})·{}", c.render(), vars.join("·")),
            }
        })
        .collect();
    format!("{} = 0", parts.join(" + "))
}

struct Equation {
    relation: String,
    poly: Poly,
}

fn equations(constants: &Constants) -> Vec<Equation> {
    let v = verify_rep(&symbolic_rep(constants));
    let mut out = Vec::new();
    for r in v.relations {
        for row in 0..4 {
            for col in 0..4 {
                let p = r.residual.get(row, col);
                if !p.is_zero() {
                    out.push(Equation { relation: format!("{} at ({},{})", r.relation, row + 1, col + 1), poly: p.clone() });
                }
            }
        }
    }
    out
}

fn is_h(v: usize) -> bool {
    v < 4
}

/// Linear conditions on h extracted from equations of the form
/// `q·(affine in h) = 0` with q a single nonzero odd entry.
fn h_condition(p: &Poly) -> Option<(Vec<Scalar>, Scalar)> {
    let mut q: Option<usize> = None;
    let mut lin = vec![Scalar::zero(); 4];
    let mut c0 = Scalar::zero();
    for (m, c) in p.terms() {
        let odd: Vec<usize> = m.iter().copied().filter(|v| !is_h(*v)).collect();
        let hs: Vec<usize> = m.iter().copied().filter(|v| is_h(*v)).collect();
        if odd.len() != 1 || hs.len() > 1 || q.is_some_and(|x| x != odd[0]) {
            return None;
        }
        q = Some(odd[0]);
        match hs.first() {
            Some(h) => lin[*h] = c.clone(),
            None => c0 = c.clone(),
        }
    }
    Some((lin, -&c0))
}

fn refute(eqs: &[Equation], alive: &dyn Fn(usize) -> bool, names: &[&str; 4]) -> Option<String> {
    let mut hrows = Vec::new();
    for e in eqs {
        let p = e.poly.restrict(alive);
        if p.is_empty() {
            continue;
        }
        if p.len() == 1 && p.terms().all(|(m, _)| m.iter().all(|v| !is_h(*v))) {
            return Some(format!("{}: {}", e.relation, render_eq(&p, names)));
        }
        if let Some(row) = h_condition(&p) {
            hrows.push(row);
        }
    }
    match solve_linear(&hrows, 4, &Scalar::zero()) {
        None => Some("the conditions on the diagonal of H are inconsistent".into()),
        Some((x, 0)) if x.iter().all(Scalar::is_zero) => Some("the conditions on the diagonal of H force H = 0".into()),
        _ => None,
    }
}

fn sign_vectors(n: usize) -> impl Iterator<Item = Vec<Scalar>> {
    (0..1u32 << n).map(move |bits| (0..n).map(|i| Scalar::int(if bits >> i & 1 == 0 { 1 } else { -1 })).collect())
}

/// Try to complete a surviving pattern: entries of the first two odd
/// generators from {1, −1}, the third one and H solved linearly, then an
/// exact check.
fn complete(constants: &Constants, eqs: &[Equation], supports: [u8; 3]) -> Option<Representation> {
    let alive = |v: usize| is_h(v) || supports[v / 4 - 1] >> (v % 4) & 1 == 1;
    let fixed: Vec<usize> = (4..12).filter(|v| alive(*v)).collect();
    let third: Vec<usize> = (12..16).filter(|v| alive(*v)).collect();
    let restricted: Vec<Poly> = eqs.iter().map(|e| e.poly.restrict(alive)).filter(|p| !p.is_empty()).collect();
    for signs in sign_vectors(fixed.len()) {
        let known: BTreeMap<usize, Scalar> = fixed.iter().copied().zip(signs).collect();
        // third odd generator from the equations without h
        let mut rows = Vec::new();
        for p in &restricted {
            if p.terms().any(|(m, _)| m.iter().any(|v| is_h(*v))) {
                continue;
            }
            let s = p.substitute(&|v| known.get(&v).cloned());
            let Some((lin, c0)) = s.affine() else { return None };
            rows.push((third.iter().map(|v| lin.get(v).cloned().unwrap_or_else(Scalar::zero)).collect(), -&c0));
        }
        let Some((z, _)) = solve_linear(&rows, third.len(), &Scalar::one()) else { continue };
        if z.iter().any(Scalar::is_zero) {
            continue;
        }
        let mut known = known;
        known.extend(third.iter().copied().zip(z));
        // then H
        let mut rows = Vec::new();
        for p in &restricted {
            let s = p.substitute(&|v| known.get(&v).cloned());
            let Some((lin, c0)) = s.affine() else { return None };
            rows.push(((0..4).map(|v| lin.get(&v).cloned().unwrap_or_else(Scalar::zero)).collect(), -&c0));
        }
        let Some((h, _)) = solve_linear(&rows, 4, &Scalar::one()) else { continue };
        let mats = symbolic_rep(constants).mats.map(|m| {
            m.map(|p| {
                let s = p.substitute(&|v| if is_h(v) { Some(h[v].clone()) } else { Some(known.get(&v).cloned().unwrap_or_else(Scalar::zero)) });
                let c = s.terms().next().map(|(_, c)| c.clone()).unwrap_or_else(Scalar::zero);
                c
            })
        });
        let rep = Representation::new(constants.clone(), mats);
        if verify_rep(&rep).ok() {
            return Some(rep);
        }
    }
    None
}

/// Decide whether a 4×4 representation with four nonzero matrices exists
/// for one of the three exceptional labels, exploring at most `budget`
/// support patterns.
pub fn prove_no_rep(label: &TableLabel, budget: usize) -> Result<NoRepOutcome, MatrepError> {
    if !is_exceptional(label) {
        return Err(MatrepError::NotExceptional(label.to_string()));
    }
    let constants = table_entry(label).map_err(|e| MatrepError::Label(e.to_string()))?;
    let (table, names) = match &constants {
        Constants::Algebra(a) => (BracketTable::algebra(a), super::rep::ALGEBRA_NAMES),
        Constants::Superalgebra(s) => (BracketTable::superalgebra(s), super::rep::SUPERALGEBRA_NAMES),
        Constants::Z2(_) => return Err(MatrepError::NotExceptional(label.to_string())),
    };

    for (triple, r) in table.jacobi_residuals() {
        if let Some(k) = r.iter().position(|c| !c.is_zero()) {
            return Ok(NoRepOutcome::Proven(ProofTrace::JacobiForcing {
                triple,
                generator: names[k].to_string(),
                coefficient: r[k].clone(),
            }));
        }
    }

    let eqs = equations(&constants);
    let mut patterns: Vec<[u8; 3]> = Vec::new();
    for a in 1..16u8 {
        for b in 1..16u8 {
            for c in 1..16u8 {
                patterns.push([a, b, c]);
            }
        }
    }
    patterns.sort_by_key(|p| std::cmp::Reverse(p.iter().map(|m| m.count_ones()).sum::<u32>()));

    let mut refutations = Vec::new();
    let mut unresolved = Vec::new();
    for (explored, supports) in patterns.iter().enumerate() {
        if explored >= budget {
            return Ok(NoRepOutcome::Inconclusive {
                explored,
                unresolved,
                reason: format!("budget of {budget} patterns exhausted"),
            });
        }
        let alive = |v: usize| is_h(v) || supports[v / 4 - 1] >> (v % 4) & 1 == 1;
        match refute(&eqs, &alive, &names) {
            Some(reason) => refutations.push(Refutation { supports: *supports, reason }),
            None => match complete(&constants, &eqs, *supports) {
                Some(rep) => return Ok(NoRepOutcome::Counterexample(Box::new(rep))),
                None => unresolved.push(*supports),
            },
        }
    }
    if unresolved.is_empty() {
        Ok(NoRepOutcome::Proven(ProofTrace::Exhaustive { refutations }))
    } else {
        let n = unresolved.len();
        Ok(NoRepOutcome::Inconclusive {
            explored: patterns.len(),
            unresolved,
            reason: format!("{n} support patterns neither refuted nor completed"),
        })
    }
}
