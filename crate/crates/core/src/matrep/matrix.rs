use serde_json::{json, Value};

use super::ring::Ring;
use super::MatrepError;
use crate::kernel::{bracket_kind, BracketKind, GradingKind, GradingVector, Scalar};

/// Gradings of the basis vectors: (00, 11, 10, 01) for 4×4, (0, 1) for 2×2.
pub const VECTOR_GRADINGS_4: [GradingVector; 4] =
    [GradingVector::G00, GradingVector::G11, GradingVector::G10, GradingVector::G01];
pub const VECTOR_GRADINGS_2: [GradingVector; 2] = [GradingVector::EVEN, GradingVector::ODD];

fn vector_gradings(n: usize) -> Result<&'static [GradingVector], MatrepError> {
    match n {
        4 => Ok(&VECTOR_GRADINGS_4),
        2 => Ok(&VECTOR_GRADINGS_2),
        _ => Err(MatrepError::Dimension(n)),
    }
}

/// Sector of the matrix unit E_rc: it maps V_c into V_r.
pub fn entry_sector(n: usize, r: usize, c: usize) -> Result<GradingVector, MatrepError> {
    let g = vector_gradings(n)?;
    Ok(g[r] + g[c])
}

/// Square matrix over a commutative ring, row-major.
#[derive(Clone, PartialEq)]
pub struct GradedMatrix<R: Ring = Scalar> {
    n: usize,
    e: Vec<R>,
}

impl<R: Ring> std::fmt::Debug for GradedMatrix<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<String> =
            (0..self.n).map(|r| (0..self.n).map(|c| self.get(r, c).render()).collect::<Vec<_>>().join(", ")).collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

impl<R: Ring> GradedMatrix<R> {
    pub fn zeros(n: usize) -> Self {
        GradedMatrix { n, e: vec![R::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::diag(&vec![R::one(); n])
    }

    pub fn diag(d: &[R]) -> Self {
        let mut m = Self::zeros(d.len());
        for (i, v) in d.iter().enumerate() {
            m.set(i, i, v.clone());
        }
        m
    }

    /// Matrix with the given (1-indexed) entries, zero elsewhere.
    pub fn from_entries(n: usize, entries: &[(usize, usize, R)]) -> Self {
        let mut m = Self::zeros(n);
        for (r, c, v) in entries {
            m.set(r - 1, c - 1, v.clone());
        }
        m
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> R) -> Self {
        GradedMatrix { n, e: (0..n * n).map(|k| f(k / n, k % n)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> &R {
        &self.e[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: R) {
        self.e[r * self.n + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(R::is_zero)
    }

    /// 0-indexed positions of the nonzero entries.
    pub fn support(&self) -> Vec<(usize, usize)> {
        (0..self.n * self.n).filter(|k| !self.e[*k].is_zero()).map(|k| (k / self.n, k % self.n)).collect()
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> GradedMatrix<S> {
        GradedMatrix { n: self.n, e: self.e.iter().map(f).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        GradedMatrix { n: self.n, e: self.e.iter().zip(&o.e).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        GradedMatrix { n: self.n, e: self.e.iter().zip(&o.e).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        self.map(|x| x.scale(s))
    }

    pub fn scale_by(&self, s: &R) -> Self {
        self.map(|x| x.mul(s))
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n, "dimension mismatch");
        let n = self.n;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let b = o.get(k, c);
                    if !b.is_zero() {
                        let v = out.get(r, c).add(&a.mul(b));
                        out.set(r, c, v);
                    }
                }
            }
        }
        out
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn anticommutator(&self, o: &Self) -> Self {
        self.mul(o).add(&o.mul(self))
    }

    /// Whether every nonzero entry lies in the pattern of sector `g`.
    pub fn fits_sector(&self, g: &GradingVector) -> Result<bool, MatrepError> {
        for (r, c) in self.support() {
            if entry_sector(self.n, r, c)? != *g {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Row-major entries rendered as exact strings, plus the sector tag.
    pub fn to_json(&self) -> Value {
        let rows: Vec<Vec<String>> =
            (0..self.n).map(|r| (0..self.n).map(|c| self.get(r, c).render()).collect()).collect();
        let sector = sector_of_matrix(self).map(|g| g.to_string()).unwrap_or_else(|_| "none".into());
        json!({ "sector": sector, "rows": rows })
    }
}

/// The unique sector whose support pattern contains the support of `m`.
pub fn sector_of_matrix<R: Ring>(m: &GradedMatrix<R>) -> Result<GradingVector, MatrepError> {
    let mut found: Option<GradingVector> = None;
    for (r, c) in m.support() {
        let g = entry_sector(m.dim(), r, c)?;
        match found {
            None => found = Some(g),
            Some(f) if f == g => {}
            Some(f) => return Err(MatrepError::MixedSupport(f, g)),
        }
    }
    found.ok_or(MatrepError::ZeroMatrix)
}

/// `AB ∓ BA` for sector-homogeneous matrices, with the bracket kind read off
/// the sectors.
pub fn bracket_matrices<R: Ring>(
    kind: GradingKind,
    a: &GradedMatrix<R>,
    b: &GradedMatrix<R>,
) -> Result<GradedMatrix<R>, MatrepError> {
    if a.is_zero() || b.is_zero() {
        return Ok(GradedMatrix::zeros(a.dim()));
    }
    let (ga, gb) = (sector_of_matrix(a)?, sector_of_matrix(b)?);
    let out = bracket_graded(kind, a, &ga, b, &gb)?;
    if !out.is_zero() {
        let g = sector_of_matrix(&out)?;
        debug_assert_eq!(g, ga + gb);
    }
    Ok(out)
}

/// Bracket with explicitly declared gradings (the matrices may be zero).
pub fn bracket_graded<R: Ring>(
    kind: GradingKind,
    a: &GradedMatrix<R>,
    ga: &GradingVector,
    b: &GradedMatrix<R>,
    gb: &GradingVector,
) -> Result<GradedMatrix<R>, MatrepError> {
    Ok(match bracket_kind(kind, ga, gb)? {
        BracketKind::Commutator => a.commutator(b),
        BracketKind::Anticommutator => a.anticommutator(b),
    })
}

pub fn kron(a: &GradedMatrix, b: &GradedMatrix) -> GradedMatrix {
    let (n, m) = (a.dim(), b.dim());
    GradedMatrix::from_fn(n * m, |r, c| a.get(r / m, c / m) * b.get(r % m, c % m))
}

/// Fermion parity operator N_F = diag(1, −1).
pub fn fermion_parity() -> GradedMatrix {
    GradedMatrix::diag(&[Scalar::one(), Scalar::int(-1)])
}

/// The two independent parity operators, their product and the projectors.
#[derive(Debug, Clone, PartialEq)]
pub struct ParityOps {
    pub n1: GradedMatrix,
    pub n2: GradedMatrix,
    pub n3: GradedMatrix,
    pub p1_plus: GradedMatrix,
    pub p1_minus: GradedMatrix,
    pub p2_plus: GradedMatrix,
    pub p2_minus: GradedMatrix,
}

impl ParityOps {
    pub fn new() -> Self {
        let nf = fermion_parity();
        let i2 = GradedMatrix::identity(2);
        let i4 = GradedMatrix::identity(4);
        let half = Scalar::frac(1, 2);
        let n1 = kron(&nf, &nf);
        let n2 = kron(&i2, &nf);
        let n3 = kron(&nf, &i2);
        let proj = |n: &GradedMatrix, s: i64| i4.add(&n.scale(&Scalar::int(s))).scale(&half);
        ParityOps {
            p1_plus: proj(&n1, 1),
            p1_minus: proj(&n1, -1),
            p2_plus: proj(&n2, 1),
            p2_minus: proj(&n2, -1),
            n1,
            n2,
            n3,
        }
    }
}

impl Default for ParityOps {
    fn default() -> Self {
        Self::new()
    }
}

fn apply(m: &GradedMatrix, v: &[Scalar]) -> Vec<Scalar> {
    (0..m.dim()).map(|r| (0..m.dim()).map(|c| m.get(r, c) * &v[c]).sum()).collect()
}

/// Eigenvalue (0 or 1) of a projector on `v`, if `v` is an eigenvector.
fn projector_eigenvalue(p: &GradedMatrix, v: &[Scalar]) -> Option<u8> {
    let pv = apply(p, v);
    if pv.iter().all(Scalar::is_zero) {
        Some(0)
    } else if pv == v {
        Some(1)
    } else {
        None
    }
}

/// Grading of a homogeneous vector, read off the eigenvalues of P₁₋ and
/// P₂₋ (4-vectors) or of P₋ = (1 − N_F)/2 (2-vectors).
pub fn grade_vector(v: &[Scalar]) -> Result<GradingVector, MatrepError> {
    if v.iter().all(Scalar::is_zero) {
        return Err(MatrepError::ZeroVector);
    }
    match v.len() {
        4 => {
            let ops = ParityOps::new();
            let p1 = projector_eigenvalue(&ops.p1_minus, v);
            let p2 = projector_eigenvalue(&ops.p2_minus, v);
            match (p1, p2) {
                (Some(a), Some(b)) => Ok(GradingVector::z2z2(a, b)),
                _ => Err(MatrepError::MixedVector),
            }
        }
        2 => {
            let pm = GradedMatrix::identity(2).sub(&fermion_parity()).scale(&Scalar::frac(1, 2));
            projector_eigenvalue(&pm, v).map(GradingVector::z2).ok_or(MatrepError::MixedVector)
        }
        n => Err(MatrepError::Dimension(n)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::int(n)
    }

    /// The printed placement of m1..m16, 1-indexed.
    const PRINTED: [(&str, [(usize, usize); 4]); 4] = [
        ("00", [(1, 1), (2, 2), (3, 3), (4, 4)]),
        ("11", [(1, 2), (2, 1), (3, 4), (4, 3)]),
        ("10", [(1, 3), (2, 4), (3, 1), (4, 2)]),
        ("01", [(1, 4), (2, 3), (3, 2), (4, 1)]),
    ];

    #[test]
    fn sector_patterns_match_printed_placement() {
        for (tag, pos) in PRINTED {
            for (r, c) in pos {
                assert_eq!(entry_sector(4, r - 1, c - 1).unwrap().to_string(), tag);
            }
        }
    }

    #[test]
    fn sector_examples() {
        let d = GradedMatrix::diag(&[s(1), s(2), s(3), s(4)]);
        assert_eq!(sector_of_matrix(&d).unwrap(), GradingVector::G00);
        let m = GradedMatrix::from_entries(4, &[(1, 2, s(1)), (2, 1, s(1)), (3, 4, s(1)), (4, 3, s(1))]);
        assert_eq!(sector_of_matrix(&m).unwrap(), GradingVector::G11);
        let m = GradedMatrix::from_entries(4, &[(1, 2, s(1)), (1, 3, s(1))]);
        assert!(matches!(sector_of_matrix(&m), Err(MatrepError::MixedSupport(..))));
        let m = GradedMatrix::from_entries(2, &[(1, 2, s(1))]);
        assert_eq!(sector_of_matrix(&m).unwrap(), GradingVector::ODD);
    }

    #[test]
    fn vector_gradings() {
        let unit = |i: usize| -> Vec<Scalar> { (0..4).map(|k| if k == i { s(5) } else { s(0) }).collect() };
        assert_eq!(grade_vector(&unit(0)).unwrap(), GradingVector::G00);
        assert_eq!(grade_vector(&unit(1)).unwrap(), GradingVector::G11);
        assert_eq!(grade_vector(&unit(2)).unwrap(), GradingVector::G10);
        assert_eq!(grade_vector(&unit(3)).unwrap(), GradingVector::G01);
        assert!(grade_vector(&[s(1), s(1), s(0), s(0)]).is_err());
        assert_eq!(grade_vector(&[s(0), s(2)]).unwrap(), GradingVector::ODD);
    }

    #[test]
    fn projector_algebra() {
        let o = ParityOps::new();
        let i4 = GradedMatrix::identity(4);
        assert_eq!(o.n3, o.n1.mul(&o.n2));
        for (p, m) in [(&o.p1_plus, &o.p1_minus), (&o.p2_plus, &o.p2_minus)] {
            assert_eq!(p.mul(p), *p);
            assert_eq!(m.mul(m), *m);
            assert!(p.mul(m).is_zero());
            assert_eq!(p.add(m), i4);
        }
        assert_eq!(o.p1_plus.mul(&o.p2_minus), o.p2_minus.mul(&o.p1_plus));
        // P₁ₛP₂ₜ are the coordinate projectors, in the vector order 00, 11, 10, 01
        let unit = |k: usize| GradedMatrix::from_entries(4, &[(k, k, s(1))]);
        assert_eq!(o.p1_plus.mul(&o.p2_plus), unit(1));
        assert_eq!(o.p1_minus.mul(&o.p2_minus), unit(2));
        assert_eq!(o.p1_minus.mul(&o.p2_plus), unit(3));
        assert_eq!(o.p1_plus.mul(&o.p2_minus), unit(4));
    }

    #[test]
    fn bracket_examples() {
        let a = GradedMatrix::from_entries(4, &[(1, 3, s(1)), (3, 1, s(2))]);
        let b = GradedMatrix::from_entries(4, &[(1, 4, s(1)), (4, 1, s(3))]);
        let alg = bracket_matrices(GradingKind::Z2Z2Algebra, &a, &b).unwrap();
        assert_eq!(alg, a.anticommutator(&b));
        assert_eq!(sector_of_matrix(&alg).unwrap(), GradingVector::G11);
        let sup = bracket_matrices(GradingKind::Z2Z2Superalgebra, &a, &b).unwrap();
        assert_eq!(sup, a.commutator(&b));
        assert_eq!(sector_of_matrix(&sup).unwrap(), GradingVector::G11);
        let i = GradedMatrix::<Scalar>::identity(4);
        assert!(bracket_matrices(GradingKind::Z2Z2Algebra, &i, &i).unwrap().is_zero());
    }
}
