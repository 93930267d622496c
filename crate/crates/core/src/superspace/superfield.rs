use std::collections::BTreeSet;

use super::coords::{Element, Point, Sym};
use super::SuperspaceError;
use crate::kernel::{sign_i32, GradingKind, Scalar};
use crate::structure::{AlgebraConstants, BracketTable, SuperalgebraConstants, BASIS_GRADINGS};

/// Σ_k c_k G_k over the generators H, X1, X2, X3 (Q's or Q10, Q01, Z).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Superfield {
    pub kind: GradingKind,
    pub comps: [Element; 4],
}

impl Superfield {
    pub fn zero(kind: GradingKind) -> Self {
        Superfield { kind, comps: std::array::from_fn(|_| Element::zero(kind)) }
    }

    /// Φ = xH + w₁Q₁ + w₂Q₂ + w₃Q₃ (or xH + θQ10 + ηQ01 + sZ) at `point`;
    /// `Point::Param` gives Λ.
    pub fn at(kind: GradingKind, point: Point) -> Self {
        Superfield { kind, comps: std::array::from_fn(|k| Element::sym(kind, Sym::new(point, k as u8))) }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Element::is_zero)
    }

    /// Every coefficient has the grading of its generator.
    pub fn is_homogeneous(&self) -> bool {
        self.comps.iter().zip(BASIS_GRADINGS).all(|(c, g)| c.is_zero() || c.grading() == Some(g))
    }

    pub fn points(&self) -> BTreeSet<Point> {
        self.comps.iter().flat_map(|c| c.points().collect::<Vec<_>>()).collect()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Superfield { kind: self.kind, comps: std::array::from_fn(|k| self.comps[k].scale(c)) }
    }

    pub fn add(&self, other: &Superfield) -> Self {
        Superfield { kind: self.kind, comps: std::array::from_fn(|k| &self.comps[k] + &other.comps[k]) }
    }

    pub fn sub(&self, other: &Superfield) -> Self {
        Superfield { kind: self.kind, comps: std::array::from_fn(|k| &self.comps[k] - &other.comps[k]) }
    }

    pub fn render(&self, names: &[&str; 4]) -> String {
        let parts: Vec<String> = self
            .comps
            .iter()
            .zip(names)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, n)| format!("({c})·{n}"))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

pub fn generator_names(kind: GradingKind) -> [&'static str; 4] {
    if kind == GradingKind::Z2Z2Superalgebra {
        ["H", "Q10", "Q01", "Z"]
    } else {
        ["H", "Q1", "Q2", "Q3"]
    }
}

/// [ΦA, ΦB] without the point-label check. Moving the coordinate b_j past
/// G_i gives [a_iG_i, b_jG_j] = (−1)^{g_i·g_j} a_i b_j (G_i, G_j).
pub(crate) fn commutator_unchecked(table: &BracketTable, a: &Superfield, b: &Superfield) -> Superfield {
    let kind = table.kind;
    let mut out = Superfield::zero(kind);
    for i in 0..4 {
        if a.comps[i].is_zero() {
            continue;
        }
        for j in 0..4 {
            if b.comps[j].is_zero() || table.table[i][j].iter().all(Scalar::is_zero) {
                continue;
            }
            let mut ab = &a.comps[i] * &b.comps[j];
            if sign_i32(kind, &BASIS_GRADINGS[i], &BASIS_GRADINGS[j]) == -1 {
                ab = -&ab;
            }
            for k in 0..4 {
                let t = &table.table[i][j][k];
                if !t.is_zero() {
                    out.comps[k] = &out.comps[k] + &ab.scale(t);
                }
            }
        }
    }
    out
}

/// [ΦA, ΦB] for superfields living at different points of superspace.
pub fn superfield_commutator(table: &BracketTable, a: &Superfield, b: &Superfield) -> Result<Superfield, SuperspaceError> {
    if a.kind != table.kind || b.kind != table.kind {
        return Err(SuperspaceError::KindMismatch);
    }
    if let Some(p) = a.points().intersection(&b.points()).next() {
        return Err(SuperspaceError::LabelCollision(*p));
    }
    Ok(commutator_unchecked(table, a, b))
}

/// Λ⁽⁰⁾ = [Φ, Λ], Λ⁽ⁿ⁺¹⁾ = [Φ, Λ⁽ⁿ⁾]; returns Λ⁽ⁿ⁾.
pub fn lambda_tower(table: &BracketTable, phi: &Superfield, lambda: &Superfield, n: usize) -> Superfield {
    let mut cur = commutator_unchecked(table, phi, lambda);
    for _ in 0..n {
        if cur.is_zero() {
            break;
        }
        cur = commutator_unchecked(table, phi, &cur);
    }
    cur
}

fn sym(kind: GradingKind, p: Point, k: u8) -> Element {
    Element::sym(kind, Sym::new(p, k))
}

fn pair(kind: GradingKind, a: (Point, u8), b: (Point, u8)) -> Element {
    &sym(kind, a.0, a.1) * &sym(kind, b.0, b.1)
}

/// The closed algebra-case formula exactly as printed, including its Q3
/// coefficient b3(x^A w3^B − w2^A w1^B).
pub fn printed_algebra_commutator(c: &AlgebraConstants) -> Superfield {
    let kind = GradingKind::Z2Z2Algebra;
    let (a, b) = (Point::A, Point::B);
    let mut out = Superfield::zero(kind);
    // (i, j, k): the d-term of Q_i is w_j^A w_k^B + w_k^A w_j^B.
    for (i, j, k) in [(1u8, 2u8, 3u8), (2, 3, 1), (3, 1, 2)] {
        let b_term = if i == 3 {
            &pair(kind, (a, 0), (b, 3)) - &pair(kind, (a, 2), (b, 1))
        } else {
            &pair(kind, (a, 0), (b, i)) - &pair(kind, (a, i), (b, 0))
        };
        let d_term = &pair(kind, (a, j), (b, k)) + &pair(kind, (a, k), (b, j));
        out.comps[i as usize] = &b_term.scale(&c.b[i as usize - 1]) - &d_term.scale(&c.d[i as usize - 1]);
    }
    out
}

/// The closed superalgebra-case formula exactly as printed.
pub fn printed_superalgebra_commutator(c: &SuperalgebraConstants) -> Superfield {
    let kind = GradingKind::Z2Z2Superalgebra;
    let (a, b) = (Point::A, Point::B);
    let p = |x: (Point, u8), y: (Point, u8)| pair(kind, x, y);
    let mut out = Superfield::zero(kind);
    out.comps[0] = -&(&p((a, 1), (b, 1)).scale(&c.alpha[0]) + &p((a, 2), (b, 2)).scale(&c.alpha[1]));
    out.comps[1] = &(&p((a, 0), (b, 1)) - &p((b, 0), (a, 1))).scale(&c.a[0])
        - &(&p((a, 2), (b, 3)) + &p((a, 3), (b, 2))).scale(&c.beta[1]);
    out.comps[2] = &(&p((a, 0), (b, 2)) - &p((b, 0), (a, 2))).scale(&c.a[1])
        - &(&p((a, 1), (b, 3)) + &p((a, 3), (b, 1))).scale(&c.beta[0]);
    out.comps[3] = &(&p((a, 0), (b, 3)) - &p((a, 3), (b, 0))).scale(&c.b)
        + &(&p((a, 1), (b, 2)) - &p((a, 2), (b, 1))).scale(&c.c);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn collision_is_an_error() {
        let t = BracketTable::algebra(&AlgebraConstants::from_ints([0, 0, 1], [0; 3]));
        let a = Superfield::at(t.kind, Point::A);
        assert_eq!(superfield_commutator(&t, &a, &a), Err(SuperspaceError::LabelCollision(Point::A)));
        let s = Superfield::at(GradingKind::Z2Z2Superalgebra, Point::B);
        assert_eq!(superfield_commutator(&t, &a, &s), Err(SuperspaceError::KindMismatch));
    }

    #[test]
    fn zero_constants_give_zero() {
        let t = BracketTable::superalgebra(&SuperalgebraConstants::zero());
        let r = superfield_commutator(&t, &Superfield::at(t.kind, Point::A), &Superfield::at(t.kind, Point::B)).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn superalgebra_formula_agrees_with_printed() {
        let c = SuperalgebraConstants::from_ints([2, 3, 5, 7, 11, 13, 17, 19]);
        let t = BracketTable::superalgebra(&c);
        let r = superfield_commutator(&t, &Superfield::at(t.kind, Point::A), &Superfield::at(t.kind, Point::B)).unwrap();
        assert_eq!(r, printed_superalgebra_commutator(&c));
        assert!(r.is_homogeneous());
    }

    #[test]
    fn algebra_formula_differs_only_in_q3() {
        let c = AlgebraConstants::from_ints([2, 3, 5], [7, 11, 13]);
        let t = BracketTable::algebra(&c);
        let r = superfield_commutator(&t, &Superfield::at(t.kind, Point::A), &Superfield::at(t.kind, Point::B)).unwrap();
        let p = printed_algebra_commutator(&c);
        assert_eq!(r.comps[..3], p.comps[..3]);
        let diff = &r.comps[3] - &p.comps[3];
        let kind = t.kind;
        let expected = (&pair(kind, (Point::A, 2), (Point::B, 1)) - &pair(kind, (Point::A, 3), (Point::B, 0))).scale(&Scalar::int(13));
        assert_eq!(diff, expected);
    }
}
