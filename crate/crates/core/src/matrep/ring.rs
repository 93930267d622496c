use std::fmt;

use crate::kernel::Scalar;

/// Commutative entry domain of graded matrices.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_scalar(s: &Scalar) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn render(&self) -> String;

    fn scale(&self, s: &Scalar) -> Self {
        self.mul(&Self::from_scalar(s))
    }
}

impl Ring for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn from_scalar(s: &Scalar) -> Self {
        s.clone()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn render(&self) -> String {
        Scalar::render(self)
    }
}

/// Polynomial in one central symbol ∂ with scalar coefficients, lowest
/// degree first. Used for D-module entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DPoly {
    coeffs: Vec<Scalar>,
}

impl DPoly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        DPoly { coeffs }
    }

    /// The symbol ∂ itself.
    pub fn d() -> Self {
        DPoly::new(vec![Scalar::zero(), Scalar::one()])
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Substitute a scalar for ∂.
    pub fn eval(&self, at: &Scalar) -> Scalar {
        self.coeffs.iter().rev().fold(Scalar::zero(), |acc, c| &(&acc * at) + c)
    }
}

impl fmt::Debug for DPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Ring for DPoly {
    fn zero() -> Self {
        DPoly { coeffs: vec![] }
    }
    fn one() -> Self {
        DPoly::new(vec![Scalar::one()])
    }
    fn from_scalar(s: &Scalar) -> Self {
        DPoly::new(vec![s.clone()])
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        DPoly::new((0..n).map(|k| &self.coeff(k) + &o.coeff(k)).collect())
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        DPoly::new(out)
    }
    fn neg(&self) -> Self {
        DPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
    fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "∂".into(),
                _ => format!("∂^{k}"),
            };
            let coef = if k > 0 && c.is_one() {
                String::new()
            } else if c.is_real() {
                c.render()
            } else {
                format!("({})", c.render())
            };
            parts.push(match (coef.is_empty(), mono.is_empty()) {
                (true, _) => mono,
                (false, true) => coef,
                (false, false) => format!("{coef}{mono}"),
            });
        }
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dpoly_arithmetic() {
        let d = DPoly::d();
        let p = d.add(&DPoly::one());
        let sq = p.mul(&p);
        assert_eq!(sq, DPoly::new(vec![Scalar::one(), Scalar::int(2), Scalar::one()]));
        assert_eq!(sq.eval(&Scalar::int(3)), Scalar::int(16));
        assert!(p.sub(&p).is_zero());
        assert_eq!(sq.render(), "∂^2 + 2∂ + 1");
    }
}
