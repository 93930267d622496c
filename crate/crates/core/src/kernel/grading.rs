use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

use super::Scalar;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GradingError {
    #[error("grading arity mismatch: {kind:?} expects {expected} bits, got {got}")]
    Arity { kind: GradingKind, expected: usize, got: usize },
    #[error("grading vectors of different arity ({0} vs {1})")]
    Mismatch(usize, usize),
}

/// The three classes of graded brackets: ℤ₂ superalgebras, ℤ₂×ℤ₂ color
/// algebras and ℤ₂×ℤ₂ color superalgebras.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GradingKind {
    Z2Super,
    Z2Z2Algebra,
    Z2Z2Superalgebra,
}

impl GradingKind {
    pub fn arity(self) -> usize {
        match self {
            GradingKind::Z2Super => 1,
            _ => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BracketKind {
    Commutator,
    Anticommutator,
}

/// A vector of 1 or 2 bits. Stored compactly; `len` tells the arity.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GradingVector {
    bits: [u8; 2],
    len: u8,
}

impl GradingVector {
    pub const G00: GradingVector = GradingVector { bits: [0, 0], len: 2 };
    pub const G10: GradingVector = GradingVector { bits: [1, 0], len: 2 };
    pub const G01: GradingVector = GradingVector { bits: [0, 1], len: 2 };
    pub const G11: GradingVector = GradingVector { bits: [1, 1], len: 2 };
    pub const EVEN: GradingVector = GradingVector { bits: [0, 0], len: 1 };
    pub const ODD: GradingVector = GradingVector { bits: [1, 0], len: 1 };

    pub fn z2(bit: u8) -> Self {
        GradingVector { bits: [bit & 1, 0], len: 1 }
    }

    pub fn z2z2(a: u8, b: u8) -> Self {
        GradingVector { bits: [a & 1, b & 1], len: 2 }
    }

    pub fn all_z2z2() -> [GradingVector; 4] {
        [Self::G00, Self::G10, Self::G01, Self::G11]
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bit(&self, k: usize) -> u8 {
        self.bits[k]
    }

    pub fn is_zero(&self) -> bool {
        self.bits == [0, 0]
    }

    /// Index in the fixed order 00, 10, 01, 11 (ℤ₂: 0, 1).
    pub fn index(&self) -> usize {
        (self.bits[0] + 2 * self.bits[1]) as usize
    }

    /// Componentwise mod-2 sum; `None` on arity mismatch. Panicking form is `+`.
    pub fn try_add(&self, other: &GradingVector) -> Result<GradingVector, GradingError> {
        if self.len != other.len {
            return Err(GradingError::Mismatch(self.len(), other.len()));
        }
        Ok(GradingVector {
            bits: [self.bits[0] ^ other.bits[0], self.bits[1] ^ other.bits[1]],
            len: self.len,
        })
    }
}

impl std::ops::Add for GradingVector {
    type Output = GradingVector;
    fn add(self, rhs: GradingVector) -> GradingVector {
        self.try_add(&rhs).expect("grading arity mismatch")
    }
}

impl fmt::Debug for GradingVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for GradingVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in 0..self.len() {
            write!(f, "{}", self.bits[k])?;
        }
        Ok(())
    }
}

impl Serialize for GradingVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn check(kind: GradingKind, a: &GradingVector, b: &GradingVector) -> Result<(), GradingError> {
    for v in [a, b] {
        if v.len() != kind.arity() {
            return Err(GradingError::Arity { kind, expected: kind.arity(), got: v.len() });
        }
    }
    Ok(())
}

/// The bilinear form that decides between commutators and anticommutators.
pub fn inner_product(kind: GradingKind, a: &GradingVector, b: &GradingVector) -> Result<u8, GradingError> {
    check(kind, a, b)?;
    let (a1, a2, b1, b2) = (a.bits[0], a.bits[1], b.bits[0], b.bits[1]);
    Ok(match kind {
        GradingKind::Z2Super => a1 & b1,
        // α1β2 − α2β1 ≡ α1β2 + α2β1 (mod 2)
        GradingKind::Z2Z2Algebra => (a1 & b2) ^ (a2 & b1),
        GradingKind::Z2Z2Superalgebra => (a1 & b1) ^ (a2 & b2),
    })
}

/// (−1)^{α·β}.
pub fn bracket_sign(kind: GradingKind, a: &GradingVector, b: &GradingVector) -> Result<Scalar, GradingError> {
    Ok(if inner_product(kind, a, b)? == 0 { Scalar::one() } else { Scalar::int(-1) })
}

pub(crate) fn sign_i32(kind: GradingKind, a: &GradingVector, b: &GradingVector) -> i32 {
    if inner_product(kind, a, b).expect("grading arity") == 0 {
        1
    } else {
        -1
    }
}

/// Bracket kinds as tabulated by sector; independent from the inner product
/// formula so that the two can be cross-checked.
pub fn bracket_kind(kind: GradingKind, a: &GradingVector, b: &GradingVector) -> Result<BracketKind, GradingError> {
    use BracketKind::{Anticommutator as A, Commutator as C};
    check(kind, a, b)?;
    Ok(match kind {
        GradingKind::Z2Super => {
            if a.bits[0] == 1 && b.bits[0] == 1 {
                A
            } else {
                C
            }
        }
        GradingKind::Z2Z2Algebra => {
            // rows/cols in order 00, 10, 01, 11
            const T: [[BracketKind; 4]; 4] = [[C, C, C, C], [C, C, A, A], [C, A, C, A], [C, A, A, C]];
            T[a.index()][b.index()]
        }
        GradingKind::Z2Z2Superalgebra => {
            const T: [[BracketKind; 4]; 4] = [[C, C, C, C], [C, A, C, A], [C, C, A, A], [C, A, A, C]];
            T[a.index()][b.index()]
        }
    })
}

pub fn degree_sum(a: &GradingVector, b: &GradingVector) -> Result<GradingVector, GradingError> {
    a.try_add(b)
}

/// The three signs (−1)^{γ·α}, (−1)^{α·β}, (−1)^{β·γ} that weigh the cyclic
/// terms (A,(B,C)), (B,(C,A)), (C,(A,B)) of the graded Jacobi identity.
pub fn jacobi_signs(
    kind: GradingKind,
    ga: &GradingVector,
    gb: &GradingVector,
    gc: &GradingVector,
) -> Result<[i32; 3], GradingError> {
    let s = |x: &GradingVector, y: &GradingVector| -> Result<i32, GradingError> {
        Ok(if inner_product(kind, x, y)? == 0 { 1 } else { -1 })
    };
    Ok([s(gc, ga)?, s(ga, gb)?, s(gb, gc)?])
}

/// Signed cyclic sum of the graded Jacobi identity, generic over the value
/// type produced by a bracket oracle. `bracket(x, y)` must return the bracket
/// of two values together with the grading bookkeeping done by the caller.
pub fn jacobi_combination<T, E, F>(
    kind: GradingKind,
    elems: [(&T, GradingVector); 3],
    mut bracket: F,
) -> Result<Vec<(i32, T)>, E>
where
    F: FnMut(&T, GradingVector, &T, GradingVector) -> Result<T, E>,
    E: From<GradingError>,
{
    let [(a, ga), (b, gb), (c, gc)] = elems;
    let signs = jacobi_signs(kind, &ga, &gb, &gc)?;
    let bc = bracket(b, gb, c, gc)?;
    let ca = bracket(c, gc, a, ga)?;
    let ab = bracket(a, ga, b, gb)?;
    Ok(vec![
        (signs[0], bracket(a, ga, &bc, degree_sum(&gb, &gc)?)?),
        (signs[1], bracket(b, gb, &ca, degree_sum(&gc, &ga)?)?),
        (signs[2], bracket(c, gc, &ab, degree_sum(&ga, &gb)?)?),
    ])
}
