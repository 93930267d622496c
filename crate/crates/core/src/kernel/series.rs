use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

use super::Scalar;

pub const DEFAULT_ORDER: usize = 16;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SeriesError {
    #[error("series constant term is not invertible")]
    NotInvertible,
    #[error("series is divisible by x only {0} times")]
    NotDivisibleByX(usize),
}

/// Truncated power series Σ_{k=0}^{order} c_k x^k with exact coefficients.
/// Binary operations truncate to the smaller of the two orders.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PowerSeries {
    coeffs: Vec<Scalar>,
}

impl PowerSeries {
    pub fn zero(order: usize) -> Self {
        PowerSeries { coeffs: vec![Scalar::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Scalar::one(), order)
    }

    pub fn constant(c: Scalar, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The series `x`.
    pub fn x(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = Scalar::one();
        }
        s
    }

    pub fn from_coeffs(mut coeffs: Vec<Scalar>, order: usize) -> Self {
        coeffs.resize(order + 1, Scalar::zero());
        PowerSeries { coeffs }
    }

    pub fn from_fn(order: usize, f: impl Fn(usize) -> Scalar) -> Self {
        PowerSeries { coeffs: (0..=order).map(f).collect() }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().take(order + 1).cloned().collect(), order)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        PowerSeries { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Formal derivative; the order drops by one (never below 0).
    pub fn derivative(&self) -> Self {
        let ord = self.order().saturating_sub(1);
        Self::from_fn(ord, |k| self.coeff(k + 1) * Scalar::int(k as i64 + 1))
    }

    /// Multiply by x, keeping the same truncation order.
    pub fn shift_up(&self) -> Self {
        Self::from_fn(self.order(), |k| if k == 0 { Scalar::zero() } else { self.coeff(k - 1) })
    }

    /// Divide by x; the constant term must vanish. Order drops by one.
    pub fn shift_down(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::NotDivisibleByX(0));
        }
        Ok(Self::from_fn(self.order().saturating_sub(1), |k| self.coeff(k + 1)))
    }

    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let a0inv = self.coeffs[0].inv().ok_or(SeriesError::NotInvertible)?;
        let n = self.order();
        let mut out: Vec<Scalar> = Vec::with_capacity(n + 1);
        out.push(a0inv.clone());
        for k in 1..=n {
            let mut acc = Scalar::zero();
            for j in 1..=k {
                acc += &(&self.coeffs[j] * &out[k - j]);
            }
            out.push(-(&acc * &a0inv));
        }
        Ok(PowerSeries { coeffs: out })
    }

    pub fn div(&self, rhs: &PowerSeries) -> Result<Self, SeriesError> {
        Ok(self * &rhs.inverse()?)
    }

    /// Σ x^k / (k+shift)! — `shift = 0` gives exp(x), `shift = 1` gives (eˣ−1)/x.
    pub fn exp_like(order: usize, shift: usize) -> Self {
        let mut fact = Scalar::one();
        for k in 1..=shift {
            fact = fact * Scalar::int(k as i64);
        }
        let mut coeffs = Vec::with_capacity(order + 1);
        for k in 0..=order {
            if k > 0 {
                fact = fact * Scalar::int((k + shift) as i64);
            }
            coeffs.push(fact.inv().unwrap());
        }
        PowerSeries { coeffs }
    }

    /// Substitute x → c·x.
    pub fn rescale_arg(&self, c: &Scalar) -> Self {
        let mut p = Scalar::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            coeffs.push(a * &p);
            p = &p * c;
        }
        PowerSeries { coeffs }
    }
}

fn zip_with(a: &PowerSeries, b: &PowerSeries, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> PowerSeries {
    let n = a.order().min(b.order());
    PowerSeries::from_fn(n, |k| f(&a.coeffs[k], &b.coeffs[k]))
}

impl<'a> Add<&'a PowerSeries> for &'a PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        zip_with(self, rhs, |a, b| a + b)
    }
}

impl<'a> Sub<&'a PowerSeries> for &'a PowerSeries {
    type Output = PowerSeries;
    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        zip_with(self, rhs, |a, b| a - b)
    }
}

impl<'a> Mul<&'a PowerSeries> for &'a PowerSeries {
    type Output = PowerSeries;
    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        let n = self.order().min(rhs.order());
        PowerSeries::from_fn(n, |k| (0..=k).map(|j| &self.coeffs[j] * &rhs.coeffs[k - j]).sum())
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;
    fn neg(self) -> PowerSeries {
        PowerSeries { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_one_minus_x_is_geometric() {
        let s = &PowerSeries::one(8) - &PowerSeries::x(8);
        let inv = s.inverse().unwrap();
        assert!(inv.coeffs().iter().all(Scalar::is_one));
        assert_eq!((&s * &inv), PowerSeries::one(8));
    }

    #[test]
    fn non_invertible_is_error() {
        assert_eq!(PowerSeries::x(4).inverse(), Err(SeriesError::NotInvertible));
    }

    #[test]
    fn exp_derivative_is_exp() {
        let e = PowerSeries::exp_like(10, 0);
        assert_eq!(e.derivative(), e.truncate(9));
    }
}
