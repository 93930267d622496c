use serde::{Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

use super::constants::{AlgebraConstants, Constants, SuperalgebraConstants, Z2Constants};
use crate::kernel::{Field, Scalar};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum LabelError {
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("{family} requires parameter {param}")]
    MissingParam { family: Family, param: &'static str },
    #[error("{family} takes no parameter {param}")]
    ExtraParam { family: Family, param: &'static str },
    #[error("{0} violates the parameter restrictions")]
    Restriction(String),
    #[error("cannot parse label {0:?}")]
    Parse(String),
}

/// Families of minimal graded (super)algebras: ℤ₂ classes i–iii, the eight
/// algebra families A1–A8 and the 21 superalgebra families S1–S21.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Z2I,
    Z2II,
    Z2III,
    A(u8),
    S(u8),
}

impl Family {
    pub fn algebras() -> impl Iterator<Item = Family> {
        (1..=8).map(Family::A)
    }

    pub fn superalgebras() -> impl Iterator<Item = Family> {
        (1..=21).map(Family::S)
    }

    pub fn has_eps(&self) -> bool {
        matches!(self, Family::A(1..=3) | Family::S(3 | 6 | 7 | 10 | 13 | 20))
    }

    /// Names of the continuous parameters, in order.
    pub fn params(&self) -> &'static [&'static str] {
        match self {
            Family::A(6) | Family::S(17) | Family::S(19) => &["x"],
            Family::A(8) | Family::S(18) => &["y", "z"],
            Family::S(21) => &["y"],
            _ => &[],
        }
    }

    pub fn is_algebra(&self) -> bool {
        matches!(self, Family::A(_))
    }

    pub fn is_superalgebra(&self) -> bool {
        matches!(self, Family::S(_))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Z2I => write!(f, "Z2-i"),
            Family::Z2II => write!(f, "Z2-ii"),
            Family::Z2III => write!(f, "Z2-iii"),
            Family::A(n) => write!(f, "A{n}"),
            Family::S(n) => write!(f, "S{n}"),
        }
    }
}

impl FromStr for Family {
    type Err = LabelError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || LabelError::UnknownFamily(s.to_string());
        match s {
            "Z2-i" => return Ok(Family::Z2I),
            "Z2-ii" => return Ok(Family::Z2II),
            "Z2-iii" => return Ok(Family::Z2III),
            _ => {}
        }
        let (head, num) = s.split_at(1.min(s.len()));
        let n: u8 = num.parse().map_err(|_| bad())?;
        match (head, n) {
            ("A", 1..=8) => Ok(Family::A(n)),
            ("S", 1..=21) => Ok(Family::S(n)),
            _ => Err(bad()),
        }
    }
}

impl Serialize for Family {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A table row: family plus sign ε and continuous parameters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct TableLabel {
    pub family: Family,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<i8>,
    pub params: Vec<Scalar>,
}

impl TableLabel {
    pub fn new(family: Family) -> Self {
        TableLabel { family, eps: None, params: vec![] }
    }

    pub fn with_eps(family: Family, eps: i8) -> Self {
        TableLabel { family, eps: Some(eps), params: vec![] }
    }

    pub fn with_params(family: Family, params: Vec<Scalar>) -> Self {
        TableLabel { family, eps: None, params }
    }

    fn eps_scalar(&self) -> Scalar {
        Scalar::int(self.eps.unwrap_or(1) as i64)
    }

    fn shape_ok(&self) -> Result<(), LabelError> {
        let f = self.family;
        if f.has_eps() && self.eps.is_none() {
            return Err(LabelError::MissingParam { family: f, param: "eps" });
        }
        if !f.has_eps() && self.eps.is_some() {
            return Err(LabelError::ExtraParam { family: f, param: "eps" });
        }
        if let Some(e) = self.eps {
            if e != 1 && e != -1 {
                return Err(LabelError::Restriction(self.to_string()));
            }
        }
        let names = f.params();
        if self.params.len() < names.len() {
            return Err(LabelError::MissingParam { family: f, param: names[self.params.len()] });
        }
        if self.params.len() > names.len() {
            return Err(LabelError::ExtraParam { family: f, param: "parameter" });
        }
        Ok(())
    }

    /// Whether the parameters respect the table restrictions over `field`.
    /// In ℂ-mode ε must be +1 (the sign is irrelevant there) and `x` of A6
    /// must have argument in [0, π).
    pub fn check_restrictions(&self, field: Field) -> Result<(), LabelError> {
        self.shape_ok()?;
        let bad = || Err(LabelError::Restriction(self.to_string()));
        if field == Field::Real && self.params.iter().any(|p| !p.is_real()) {
            return bad();
        }
        if field == Field::Complex && self.eps == Some(-1) {
            return bad();
        }
        let one = Scalar::one();
        let p = &self.params;
        let ok = match self.family {
            Family::A(6) => match field {
                Field::Real => !p[0].is_negative_real(),
                Field::Complex => p[0].arg_in_upper_half_open(),
            },
            Family::A(8) => p[0].norm_sqr() <= p[1].norm_sqr() && p[1].norm_sqr() <= one.norm_sqr(),
            Family::S(17) | Family::S(19) => !p[0].is_zero(),
            Family::S(18) | Family::S(21) => !p[0].is_zero() && p[0].norm_sqr() <= one.norm_sqr(),
            _ => true,
        };
        if ok {
            Ok(())
        } else {
            bad()
        }
    }

    /// Deterministic total order used for tie-breaking between candidate
    /// canonical forms: family, then ε (−1 before +1), then parameters.
    pub fn lex_cmp(&self, other: &TableLabel) -> Ordering {
        self.family
            .cmp(&other.family)
            .then_with(|| self.eps.cmp(&other.eps))
            .then_with(|| {
                for (a, b) in self.params.iter().zip(&other.params) {
                    let o = a.lex_cmp(b);
                    if o != Ordering::Equal {
                        return o;
                    }
                }
                self.params.len().cmp(&other.params.len())
            })
    }

    pub fn all_families() -> impl Iterator<Item = Family> {
        Family::algebras().chain(Family::superalgebras())
    }
}

impl fmt::Display for TableLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family)?;
        let mut parts = Vec::new();
        if let Some(e) = self.eps {
            parts.push(format!("eps={e}"));
        }
        for (n, v) in self.family.params().iter().zip(&self.params) {
            parts.push(format!("{n}={v}"));
        }
        if !parts.is_empty() {
            write!(f, "_{{{}}}", parts.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for TableLabel {
    type Err = LabelError;

    /// Parses the `Display` form, e.g. `A6_{x=1/10}`, `S13_{eps=-1}`, `A7`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || LabelError::Parse(s.to_string());
        let (fam, rest) = match s.find("_{") {
            Some(k) => (&s[..k], Some(&s[k + 2..])),
            None => (s, None),
        };
        let family: Family = fam.parse()?;
        let mut label = TableLabel::new(family);
        if let Some(rest) = rest {
            let body = rest.strip_suffix('}').ok_or_else(bad)?;
            let mut named = std::collections::BTreeMap::new();
            for kv in body.split(',') {
                let (k, v) = kv.split_once('=').ok_or_else(bad)?;
                named.insert(k.trim().to_string(), v.trim().to_string());
            }
            if let Some(e) = named.remove("eps") {
                label.eps = Some(e.parse().map_err(|_| bad())?);
            }
            for n in family.params() {
                let v = named.remove(*n).ok_or(LabelError::MissingParam { family, param: n })?;
                label.params.push(v.parse().map_err(|_| bad())?);
            }
            if !named.is_empty() {
                return Err(bad());
            }
        }
        label.shape_ok()?;
        Ok(label)
    }
}

/// The exact table row for a label. Restrictions are not enforced here (see
/// [`table_entry_checked`]); the shape of the label is.
pub fn table_entry(label: &TableLabel) -> Result<Constants, LabelError> {
    label.shape_ok()?;
    let e = label.eps_scalar();
    let p = &label.params;
    let i = Scalar::int;
    let alg = |d: [Scalar; 3], b: [Scalar; 3]| Constants::Algebra(AlgebraConstants::new(d, b));
    let half = Scalar::frac(1, 2);
    Ok(match label.family {
        Family::Z2I => Constants::Z2(Z2Constants::new(i(0), i(0))),
        Family::Z2II => Constants::Z2(Z2Constants::new(i(0), i(1))),
        Family::Z2III => Constants::Z2(Z2Constants::new(i(1), i(0))),
        Family::A(1) => alg([e, i(1), i(1)], [i(0), i(0), i(0)]),
        Family::A(2) => alg([i(0), e, i(1)], [i(0), i(0), i(0)]),
        Family::A(3) => alg([i(0), e, i(1)], [i(0), i(1), i(1)]),
        Family::A(4) => alg([i(0), i(0), i(1)], [i(0), i(0), i(0)]),
        Family::A(5) => alg([i(0), i(0), i(1)], [i(1), i(-1), i(0)]),
        Family::A(6) => alg([i(0), i(0), i(1)], [&half - &p[0], &half + &p[0], i(1)]),
        Family::A(7) => alg([i(0), i(0), i(0)], [i(0), i(0), i(0)]),
        Family::A(8) => alg([i(0), i(0), i(0)], [p[0].clone(), p[1].clone(), i(1)]),
        Family::S(n) => {
            // columns a1, a2, b, c, β1, β2, α1, α2
            let z = || i(0);
            let o = || i(1);
            let row: [Scalar; 8] = match n {
                1 => [z(), z(), z(), z(), z(), z(), z(), z()],
                2 => [z(), z(), z(), z(), z(), z(), z(), o()],
                3 => [z(), z(), z(), z(), z(), z(), e, o()],
                4 => [z(), z(), z(), z(), z(), o(), z(), z()],
                5 => [z(), z(), z(), z(), z(), o(), z(), o()],
                6 => [z(), z(), z(), z(), e, o(), z(), z()],
                7 => [z(), z(), z(), z(), e.clone(), o(), e, o()],
                8 => [z(), z(), z(), o(), z(), z(), z(), z()],
                9 => [z(), z(), z(), o(), z(), z(), z(), o()],
                10 => [z(), z(), z(), o(), z(), z(), e, o()],
                11 => [z(), z(), o(), z(), z(), z(), z(), z()],
                12 => [z(), o(), z(), z(), z(), z(), z(), z()],
                13 => [z(), o(), o(), o(), e.clone(), z(), e, z()],
                14 => [z(), o(), i(-1), z(), z(), o(), z(), z()],
                15 => [z(), o(), o(), z(), o(), z(), z(), z()],
                16 => [z(), o(), o(), o(), z(), z(), z(), z()],
                17 => [z(), o(), p[0].clone(), z(), z(), z(), z(), z()],
                18 => [o(), p[0].clone(), p[1].clone(), z(), z(), z(), z(), z()],
                19 => [o(), p[0].clone(), &o() - &p[0], z(), z(), o(), z(), z()],
                20 => [o(), o(), z(), z(), o(), e, z(), z()],
                21 => [o(), p[0].clone(), &o() + &p[0], o(), z(), z(), z(), z()],
                _ => return Err(LabelError::UnknownFamily(label.family.to_string())),
            };
            Constants::Superalgebra(SuperalgebraConstants::from_values(row))
        }
        Family::A(_) => return Err(LabelError::UnknownFamily(label.family.to_string())),
    })
}

pub fn table_entry_checked(label: &TableLabel, field: Field) -> Result<Constants, LabelError> {
    label.check_restrictions(field)?;
    table_entry(label)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_rows() {
        let a3 = table_entry(&TableLabel::with_eps(Family::A(3), -1)).unwrap();
        assert_eq!(a3, Constants::Algebra(AlgebraConstants::from_ints([0, -1, 1], [0, 1, 1])));
        let s19 = table_entry(&TableLabel::with_params(Family::S(19), vec![Scalar::frac(1, 3)])).unwrap();
        let want = SuperalgebraConstants::from_values([
            Scalar::one(),
            Scalar::frac(1, 3),
            Scalar::frac(2, 3),
            Scalar::zero(),
            Scalar::zero(),
            Scalar::one(),
            Scalar::zero(),
            Scalar::zero(),
        ]);
        assert_eq!(s19, Constants::Superalgebra(want));
        let s7 = table_entry(&TableLabel::with_eps(Family::S(7), -1)).unwrap();
        assert_eq!(s7, Constants::Superalgebra(SuperalgebraConstants::from_ints([0, 0, 0, 0, -1, 1, -1, 1])));
    }

    #[test]
    fn restrictions() {
        let a6 = |x: Scalar| TableLabel::with_params(Family::A(6), vec![x]);
        assert!(a6(Scalar::zero()).check_restrictions(Field::Real).is_ok());
        assert!(a6(Scalar::frac(-1, 2)).check_restrictions(Field::Real).is_err());
        assert!(a6(Scalar::gaussian(-1, 1, 1, 1)).check_restrictions(Field::Complex).is_ok());
        assert!(a6(Scalar::gaussian(0, 1, -1, 1)).check_restrictions(Field::Complex).is_err());
        let a8 = |y: i64, z: i64| TableLabel::with_params(Family::A(8), vec![Scalar::frac(y, 2), Scalar::frac(z, 2)]);
        assert!(a8(1, -1).check_restrictions(Field::Real).is_ok());
        assert!(a8(2, 1).check_restrictions(Field::Real).is_err());
        assert!(a8(1, 3).check_restrictions(Field::Real).is_err());
        let s17 = TableLabel::with_params(Family::S(17), vec![Scalar::zero()]);
        assert!(s17.check_restrictions(Field::Real).is_err());
        assert!(TableLabel::new(Family::A(1)).check_restrictions(Field::Real).is_err());
        assert!(TableLabel::with_eps(Family::S(7), -1).check_restrictions(Field::Complex).is_err());
    }

    #[test]
    fn label_text_roundtrip() {
        for s in ["A7", "A6_{x=1/10}", "S13_{eps=-1}", "A8_{y=-1/2,z=1}", "S18_{y=1,z=-3}", "Z2-ii"] {
            let l: TableLabel = s.parse().unwrap();
            assert_eq!(l.to_string(), s);
        }
        assert!("S22".parse::<TableLabel>().is_err());
        assert!("A6".parse::<TableLabel>().is_err());
    }
}
