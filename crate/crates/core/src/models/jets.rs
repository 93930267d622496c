use crate::kernel::{GradingKind, GradingVector, Scalar};
use crate::structure::BASIS_GRADINGS;
use crate::superspace::{GradedPoly, GradedSymbol};

use super::ModelsError;

/// Jets of order above this are rejected as Euler-operator input.
pub const MAX_JET_ORDER: u8 = 2;

/// A field jet φ⁽ᵏ⁾ or a derivative F⁽ⁿ⁾ of a formal function of one even
/// argument. Function symbols sort first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DSym {
    Func { func: u8, deriv: u8 },
    /// `field` is the slot of the field's grading (00, 10, 01, 11).
    Jet { field: u8, order: u8 },
}

const ALGEBRA_FIELDS: [&str; 4] = ["x", "w1", "w2", "w3"];
const SUPER_FIELDS: [&str; 4] = ["x", "θ", "η", "s"];
/// (name, argument) of the function symbols, by index.
pub const FUNCS: [(&str, &str); 2] = [("V", "u"), ("f", "z")];

pub fn field_name(kind: GradingKind, field: u8) -> &'static str {
    if kind == GradingKind::Z2Z2Superalgebra {
        SUPER_FIELDS[field as usize]
    } else {
        ALGEBRA_FIELDS[field as usize]
    }
}

impl GradedSymbol for DSym {
    fn grading(&self) -> GradingVector {
        match self {
            DSym::Func { .. } => GradingVector::G00,
            DSym::Jet { field, .. } => BASIS_GRADINGS[*field as usize],
        }
    }

    fn name(&self, kind: GradingKind) -> String {
        match *self {
            DSym::Func { func, deriv } => {
                let (f, arg) = FUNCS[func as usize];
                if deriv == 0 {
                    f.to_string()
                } else {
                    format!("{f}_{}", arg.repeat(deriv as usize))
                }
            }
            DSym::Jet { field, order } => {
                let base = field_name(kind, field);
                match order {
                    0 => base.to_string(),
                    1 => format!("{base}\u{307}"),
                    2 => format!("{base}\u{308}"),
                    k => format!("{base}^({k})"),
                }
            }
        }
    }
}

pub type DiffPoly = GradedPoly<DSym>;

/// A worldline model: four graded fields, formal functions of even
/// composite arguments, and the action of four generators on the fields.
#[derive(Debug, Clone)]
pub struct FieldModel {
    pub name: String,
    pub kind: GradingKind,
    pub gen_names: [&'static str; 4],
    /// (function index, its argument) for the function symbols in use.
    pub funcs: Vec<(u8, DiffPoly)>,
    /// `action[g][φ]`: generator g on the order-0 jet of field φ.
    pub action: [[DiffPoly; 4]; 4],
}

impl FieldModel {
    pub fn jet(&self, field: u8, order: u8) -> DiffPoly {
        DiffPoly::sym(self.kind, DSym::Jet { field, order })
    }

    pub fn func(&self, func: u8, deriv: u8) -> DiffPoly {
        DiffPoly::sym(self.kind, DSym::Func { func, deriv })
    }

    pub fn constant(&self, c: Scalar) -> DiffPoly {
        DiffPoly::constant(self.kind, c)
    }

    fn argument(&self, func: u8) -> &DiffPoly {
        &self.funcs.iter().find(|(f, _)| *f == func).expect("function symbol registered").1
    }

    /// Total time derivative; formal functions obey the chain rule.
    pub fn dt(&self, p: &DiffPoly) -> DiffPoly {
        p.derivation(&GradingVector::G00, |s| {
            Some(match *s {
                DSym::Jet { field, order } => self.jet(field, order + 1),
                DSym::Func { func, deriv } => &self.func(func, deriv + 1) * &self.dt(self.argument(func)),
            })
        })
    }

    pub fn dt_n(&self, p: &DiffPoly, n: u8) -> DiffPoly {
        (0..n).fold(p.clone(), |acc, _| self.dt(&acc))
    }

    /// Generator `gen` extended as a graded Leibniz derivation commuting
    /// with ∂_t.
    pub fn apply_generator(&self, gen: usize, p: &DiffPoly) -> Result<DiffPoly, ModelsError> {
        if gen >= 4 {
            return Err(ModelsError::UnknownGenerator(gen.to_string()));
        }
        Ok(self.apply(gen, p))
    }

    fn apply(&self, gen: usize, p: &DiffPoly) -> DiffPoly {
        p.derivation(&BASIS_GRADINGS[gen], |s| {
            Some(match *s {
                DSym::Jet { field, order } => self.dt_n(&self.action[gen][field as usize], order),
                DSym::Func { func, deriv } => &self.func(func, deriv + 1) * &self.apply(gen, self.argument(func)),
            })
        })
    }

    pub fn generator_index(&self, name: &str) -> Result<usize, ModelsError> {
        self.gen_names.iter().position(|g| *g == name).ok_or_else(|| ModelsError::UnknownGenerator(name.to_string()))
    }

    /// Graded left partial derivative by a jet, with the chain rule through
    /// the function symbols.
    pub fn partial(&self, p: &DiffPoly, field: u8, order: u8) -> DiffPoly {
        let target = DSym::Jet { field, order };
        p.derivation(&BASIS_GRADINGS[field as usize], |s| match *s {
            t if t == target => Some(DiffPoly::one(self.kind)),
            DSym::Func { func, deriv } => {
                let inner = self.partial(self.argument(func), field, order);
                (!inner.is_zero()).then(|| &self.func(func, deriv + 1) * &inner)
            }
            _ => None,
        })
    }

    /// δp/δφ = Σ_k (−∂_t)ᵏ ∂p/∂φ⁽ᵏ⁾ with left partial derivatives.
    pub fn euler_operator(&self, p: &DiffPoly, field: u8) -> Result<DiffPoly, ModelsError> {
        let top = max_jet_order(p);
        if top > MAX_JET_ORDER {
            return Err(ModelsError::JetOrder(top));
        }
        let mut out = DiffPoly::zero(self.kind);
        for k in 0..=top {
            let d = self.dt_n(&self.partial(p, field, k), k);
            out = if k % 2 == 0 { &out + &d } else { &out - &d };
        }
        Ok(out)
    }

    /// Euler operator against every field; all zero iff `p` is a total
    /// time derivative.
    pub fn variational_derivatives(&self, p: &DiffPoly) -> Result<[DiffPoly; 4], ModelsError> {
        let mut out: [DiffPoly; 4] = std::array::from_fn(|_| DiffPoly::zero(self.kind));
        for (f, o) in out.iter_mut().enumerate() {
            *o = self.euler_operator(p, f as u8)?;
        }
        Ok(out)
    }

    pub fn is_total_derivative(&self, p: &DiffPoly) -> Result<bool, ModelsError> {
        Ok(self.variational_derivatives(p)?.iter().all(DiffPoly::is_zero))
    }

    pub fn render(&self, p: &DiffPoly) -> String {
        p.render()
    }
}

pub fn max_jet_order(p: &DiffPoly) -> u8 {
    p.terms()
        .keys()
        .flatten()
        .filter_map(|s| match s {
            DSym::Jet { order, .. } => Some(*order),
            _ => None,
        })
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::super::classical::{a1_model, s7_model};
    use super::*;

    #[test]
    fn euler_examples() {
        let m = a1_model();
        let x2 = &m.jet(0, 0) * &m.jet(0, 0);
        assert!(m.euler_operator(&m.dt(&x2), 0).unwrap().is_zero());
        let xdot2 = &m.jet(0, 1) * &m.jet(0, 1);
        assert_eq!(m.euler_operator(&xdot2, 0).unwrap(), m.jet(0, 2).scale(&Scalar::int(-2)));
        let s = s7_model(&Scalar::frac(1, 4));
        let th_thdot = &s.jet(1, 0) * &s.jet(1, 1);
        assert_eq!(s.euler_operator(&th_thdot, 1).unwrap(), s.jet(1, 1).scale(&Scalar::int(2)));
        let p = &th_thdot * &s.jet(0, 0);
        let total = s.dt(&p);
        assert!(s.is_total_derivative(&total).unwrap());
        let deep = s.jet(0, 3);
        assert_eq!(s.euler_operator(&deep, 0), Err(ModelsError::JetOrder(3)));
    }

    #[test]
    fn chain_rule() {
        let m = a1_model();
        let v = m.func(0, 0);
        // ∂_t V(u) = V_u · (2xẋ − 2w1ẇ1 − …)
        let dv = m.dt(&v);
        assert_eq!(dv.coeff(&[DSym::Func { func: 0, deriv: 1 }, DSym::Jet { field: 0, order: 0 }, DSym::Jet { field: 0, order: 1 }]), Scalar::int(2));
        assert_eq!(m.partial(&v, 1, 0).coeff(&[DSym::Func { func: 0, deriv: 1 }, DSym::Jet { field: 1, order: 0 }]), Scalar::int(-2));
    }

    #[test]
    fn unknown_generator() {
        let m = a1_model();
        assert!(m.apply_generator(4, &m.jet(0, 0)).is_err());
        assert!(m.generator_index("Q7").is_err());
    }

    #[test]
    fn names() {
        let s = s7_model(&Scalar::zero());
        assert_eq!(DSym::Jet { field: 1, order: 1 }.name(s.kind), "θ\u{307}");
        assert_eq!(DSym::Func { func: 1, deriv: 2 }.name(s.kind), "f_zz");
    }
}
