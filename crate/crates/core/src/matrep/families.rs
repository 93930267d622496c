//! The 4×4 representation families: every printed family with its restricted
//! variants, plus corrected forms of the printed variants that do not close.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::matrix::GradedMatrix;
use super::rep::{verify_rep, Representation};
use super::ring::{DPoly, Ring};
use super::MatrepError;
use crate::kernel::{Field, Scalar};
use crate::report::{Check, Report};
use crate::structure::{nonzero, table_entry, Family, TableLabel};

/// Free parameters of a family. λ and μ live in the entry ring so that they
/// can be promoted to ∂; the rest are scalars.
#[derive(Debug, Clone)]
pub struct Ctx<R: Ring = Scalar> {
    pub lambda: R,
    pub mu: R,
    pub p: Scalar,
    pub q: Scalar,
    pub eps: Scalar,
    pub x: Scalar,
    pub y: Scalar,
    pub z: Scalar,
}

impl<R: Ring> Ctx<R> {
    fn k(&self, s: Scalar) -> R {
        R::from_scalar(&s)
    }
    /// λ − s
    fn lm(&self, s: &Scalar) -> R {
        self.lambda.sub(&R::from_scalar(s))
    }
    /// λ·s
    fn ls(&self, s: Scalar) -> R {
        self.lambda.scale(&s)
    }
    fn ep(&self) -> Scalar {
        &self.eps * &self.p
    }
}

type Mats<R> = [GradedMatrix<R>; 4];

fn m<R: Ring>(entries: Vec<(usize, usize, R)>) -> GradedMatrix<R> {
    GradedMatrix::from_entries(4, &entries)
}

fn d<R: Ring>(a: R, b: R, c: R, e: R) -> GradedMatrix<R> {
    GradedMatrix::diag(&[a, b, c, e])
}

fn one<R: Ring>() -> R {
    R::one()
}

fn q(n: i64, dd: i64) -> Scalar {
    Scalar::frac(n, dd)
}

fn i(n: i64) -> Scalar {
    Scalar::int(n)
}

fn lam_i<R: Ring>(c: &Ctx<R>) -> GradedMatrix<R> {
    d(c.lambda.clone(), c.lambda.clone(), c.lambda.clone(), c.lambda.clone())
}

// ---- algebras -------------------------------------------------------------

pub fn a1<R: Ring>(c: &Ctx<R>) -> Mats<R> {
    let l = || c.lambda.clone();
    let e = || c.k(c.eps.clone());
    [
        d(l(), l(), c.mu.clone(), l()),
        m(vec![(2, 4, one()), (4, 2, one())]),
        m(vec![(1, 4, one()), (4, 1, e())]),
        m(vec![(1, 2, one()), (2, 1, e())]),
    ]
}

pub fn a1_mu<R: Ring>(c: &Ctx<R>) -> Mats<R> {
    let h = || c.k(q(1, 2));
    let he = || c.k(&c.eps * &q(1, 2));
    [
        lam_i(c),
        m(vec![(1, 3, h()), (2, 4, h()), (3, 1, h()), (4, 2, h())]),
        m(vec![(1, 4, h()), (2, 3, he()), (3, 2, h()), (4, 1, he())]),
        m(vec![(1, 2, h()), (2, 1, he()), (3, 4, h()), (4, 3, he())]),
    ]
}

pub fn a2<R: Ring>(c: &Ctx<R>) -> Mats<R> {
    let l = || c.lambda.clone();
    [
        d(l(), l(), c.mu.clone(), l()),
        m(vec![(2, 4, one()), (4, 2, c.k(c.eps.clone()))]),
        m(vec![(1, 2, one())]),
        m(vec![(1, 4, one())]),
    ]
}

pub fn a2_mu<R: Ring>(c: &Ctx<R>) -> Mats<R> {
    let (p, qq, e) = (&c.p, &c.q, &c.eps);
    let one_pq = &i(1) - &(p * qq);
    [
        lam_i(c),
        m(vec![
            (1, 3, c.k(p.clone())),
            (2, 4, c.k(one_pq.clone())),
            (3, 1, c.k(&(e * p) * &(qq * qq))),
            (4, 2, c.k(e * &one_pq)),
        ]),
        m(vec![(1, 2, one()), (3, 4, c.k(qq.clone()))]),
        m(vec![(1, 4, one()), (3, 2, c.k(e * qq))]),
    ]
}

pub fn a3<R: Ring>(c: &Ctx<R>) -> Mats<R> {
    let (p, e) = (&c.p, &c.eps);
    let l = || c.lambda.clone();
    let l1 = || c.lm(&i(1));
    [
        d(l(), l1(), l(), l1()),
        m(vec![(1, 3, c.k(e - p)), (2, 4, c.k(c.ep())), (3, 1, c.k(&i(1) - &c.ep())), (4, 2, c.k(p.clone()))]),
        m(vec![(1, 2, one()), (3, 4, c.k(e.clone()))]),
        m(vec![(1, 4, one()), (3, 2, one())]),
    ]
}

pub fn a4<R: Ring>(c: &Ctx<R>) -> Mats<R> {
    let l = || c.lambda.clone();
    [d(l(), l(), c.mu.clone(), l()), m(vec![(2, 4, one())]), m(vec![(1, 2, one())]), m(vec![(1, 4, one())])]
}

pub fn a4_mu<R: Ring>(c: &Ctx<R>) -> Mats<R> {
    [
        lam_i(c),
        m(vec![(2, 4, one())]),
        m(vec![(1, 2, one()), (3, 4, c.k(c.p.clone()))]),
        m(vec![(1, 4, one())]),
    ]
}

pub fn a6_half<R: Ring>(c: &Ctx<R>) -> Mats<R> {
    let l = || c.lambda.clone();
    let l1 = || c.lm(&i(1));
    [d(l(), l1(), l(), l1()), m(vec![(3, 1, one()), (4, 2, one())]), m(vec![(1, 2, one())]), m(vec![(3, 2, one())])]
}

pub fn a7<R: Ring>(c: &Ctx<R>) -> Mats<R> {
    let (p, qq) = (&c.p, &c.q);
    [
        lam_i(c),
        m(vec![(1, 3, one()), (2, 4, c.k(-p)), (3, 1, c.k(p.clone())), (4, 2, c.k(i(-1)))]),
        m(vec![(1, 4, one()), (2, 3, c.k(-qq)), (3, 2, one()), (4, 1, c.k(-qq))]),
        m(vec![(1, 2, one()), (2, 1, c.k(p * qq)), (3, 4, c.k(p.clone())), (4, 3, c.k(qq.clone()))]),
    ]
}

pub fn a8<R: Ring>(c: &Ctx<R>) -> Mats<R> {
    [
        d(c.lambda.clone(), c.lm(&i(1)), c.lm(&c.z), c.lm(&c.y)),
        m(vec![(1, 4, one())]),
        m(vec![(1, 3, one())]),
        m(vec![(1, 2, one())]),
    ]
}

pub fn a8_y_1mz<R: Ring>(c: &Ctx<R>) -> Mats<R> {
    let p = &c.p;
    [
        d(c.lambda.clone(), c.lm(&i(1)), c.lm(&c.z), c.lm(&(&i(1) - &c.z))),
        m(vec![(1, 4, one()), (3, 2, c.k(p.clone()))]),
        m(vec![(1, 3, one()), (4, 2, c.k(-p))]),
        m(vec![(1, 2, one())]),
    ]
}

// ---- superalgebras --------------------------------------------------------

pub fn s1<R: Ring>(c: &Ctx<R>) -> Mats<R> {
    let (p, qq) = (&c.p, &c.q);
    [
        lam_i(c),
        m(vec![(1, 3, one()), (2, 4, c.k(p.clone()))]),
        m(vec![(1, 4, one()), (2, 3, c.k(-qq))]),
        m(vec![(1, 2, one()), (2, 1, c.k(-&(p * qq))), (3, 4, c.k(-p)), (4, 3, c.k(qq.clone()))]),
    ]
}

/// Q01 shared by S2 and S3.
fn s2_q01<R: Ring>(c: &Ctx<R>, p_entry: Scalar) -> GradedMatrix<R> {
    let inv2p = (&i(2) * &c.p).inv().expect("p checked nonzero");
    m(vec![(1, 4, one()), (2, 3, c.k(p_entry)), (3, 2, c.ls(-&inv2p)), (4, 1, c.ls(q(1, 2)))])
}

pub fn s2<R: Ring>(c: &Ctx<R>) -> Mats<R> {
    let inv2p = (&i(2) * &c.p).inv().expect("p checked nonzero");
    [
        lam_i(c),
        m(vec![(1, 3, one()), (4, 2, c.ls(-&inv2p))]),
        s2_q01(c, -&c.p),
        m(vec![(1, 2, one()), (4, 3, c.k(c.p.clone()))]),
    ]
}

pub fn s3<R: Ring>(c: &Ctx<R>) -> Mats<R> {
    let (p, e) = (&c.p, &c.eps);
    let inv2p = (&i(2) * p).inv().expect("p checked nonzero");
    [
        lam_i(c),
        m(vec![(1, 3, one()), (2, 4, c.k(-&c.ep())), (3, 1, c.ls(e * &q(1, 2))), (4, 2, c.ls(-&inv2p))]),
        s2_q01(c, -p),
        m(vec![(1, 2, one()), (2, 1, c.k(&c.ep() * p)), (3, 4, c.k(c.ep())), (4, 3, c.k(p.clone()))]),
    ]
}

pub fn s4<R: Ring>(c: &Ctx<R>) -> Mats<R> {
    [
        lam_i(c),
        m(vec![(1, 3, one())]),
        m(vec![(1, 4, one()), (2, 3, c.k(&i(1) - &c.p))]),
        m(vec![(1, 2, one()), (4, 3, c.k(c.p.clone()))]),
    ]
}

pub fn s5<R: Ring>(c: &Ctx<R>) -> Mats<R> {
    let inv2p = (&i(2) * &c.p).inv().expect("p checked nonzero");
    [
        lam_i(c),
        m(vec![(1, 3, one()), (4, 2, c.ls(inv2p.clone()))]),
        m(vec![(1, 4, one()), (2, 3, c.k(c.p.clone())), (3, 2, c.ls(inv2p)), (4, 1, c.ls(q(1, 2)))]),
        m(vec![(1, 2, one()), (4, 3, c.k(&i(1) - &c.p))]),
    ]
}

pub fn s6<R: Ring>(c: &Ctx<R>) -> Mats<R> {
    let l = || c.lambda.clone();
    [
        d(l(), c.mu.clone(), l(), l()),
        m(vec![(1, 3, one())]),
        m(vec![(1, 4, one())]),
        m(vec![(3, 4, c.k(c.eps.clone())), (4, 3, one())]),
    ]
}

/// S6, μ = λ, exactly as printed (closes only for ε = +1).
pub fn s6_mu_printed<R: Ring>(c: &Ctx<R>) -> Mats<R> {
    let (p, qq, e) = (&c.p, &c.q, &c.eps);
    let one_pq = &i(1) - &(p * qq);
    [
        lam_i(c),
        m(vec![(1, 3, one()), (2, 4, c.k(p.clone()))]),
        m(vec![(1, 4, one()), (2, 3, c.k(p.clone()))]),
        m(vec![
            (1, 2, c.k(qq.clone())),
            (2, 1, c.k(&(e * &(p * p)) * qq)),
            (3, 4, c.k(e * &one_pq)),
            (4, 3, c.k(one_pq.clone())),
        ]),
    ]
}

/// S6, μ = λ, with ε restored in Q01 and in the lower Z block.
pub fn s6_mu_corrected<R: Ring>(c: &Ctx<R>) -> Mats<R> {
    let (p, qq, e) = (&c.p, &c.q, &c.eps);
    let one_epq = &i(1) - &(&c.ep() * qq);
    [
        lam_i(c),
        m(vec![(1, 3, one()), (2, 4, c.k(p.clone()))]),
        m(vec![(1, 4, one()), (2, 3, c.k(c.ep()))]),
        m(vec![
            (1, 2, c.k(qq.clone())),
            (2, 1, c.k(&(e * &(p * p)) * qq)),
            (3, 4, c.k(e * &one_epq)),
            (4, 3, c.k(one_epq.clone())),
        ]),
    ]
}

fn s7_first_common<R: Ring>(c: &Ctx<R>, q10_31: R) -> Mats<R> {
    let (p, e) = (&c.p, &c.eps);
    let inv2p = (&i(2) * p).inv().expect("p checked nonzero");
    let one_p = &i(1) - p;
    [
        lam_i(c),
        m(vec![(1, 3, one()), (2, 4, c.k(c.ep())), (3, 1, q10_31), (4, 2, c.ls(inv2p.clone()))]),
        m(vec![(1, 4, one()), (2, 3, c.k(p.clone())), (3, 2, c.ls(inv2p)), (4, 1, c.ls(q(1, 2)))]),
        m(vec![(1, 2, one()), (2, 1, c.k(&c.ep() * p)), (3, 4, c.k(e * &one_p)), (4, 3, c.k(one_p.clone()))]),
    ]
}

/// S7, first variant, as printed: the (3,1) entry of Q10 is ε/(2λ). Scalar
/// entries only, since it divides by λ.
pub fn s7_first_printed(c: &Ctx<Scalar>) -> Mats<Scalar> {
    let v = &c.eps / &(&i(2) * &c.lambda);
    s7_first_common(c, v)
}

/// S7, first variant, with the (3,1) entry of Q10 equal to ελ/2.
pub fn s7_first_corrected<R: Ring>(c: &Ctx<R>) -> Mats<R> {
    let v = c.ls(&c.eps * &q(1, 2));
    s7_first_common(c, v)
}

pub fn s7_second<R: Ring>(c: &Ctx<R>) -> Mats<R> {
    let (p, e) = (&c.p, &c.eps);
    let inv2p = (&i(2) * p).inv().expect("p checked nonzero");
    [
        lam_i(c),
        m(vec![(1, 3, c.k(p.clone())), (2, 4, c.k(e.clone())), (3, 1, c.ls(e * &inv2p)), (4, 2, c.ls(q(1, 2)))]),
        m(vec![(1, 4, one()), (2, 3, c.k(p.clone())), (3, 2, c.ls(inv2p)), (4, 1, c.ls(q(1, 2)))]),
        m(vec![(1, 2, one()), (2, 1, c.k(e.clone()))]),
    ]
}

pub fn s8<R: Ring>(c: &Ctx<R>) -> Mats<R> {
    let l = || c.lambda.clone();
    [d(l(), l(), l(), c.mu.clone()), m(vec![(1, 3, one())]), m(vec![(3, 2, one())]), m(vec![(1, 2, one())])]
}

pub fn s8_second<R: Ring>(c: &Ctx<R>) -> Mats<R> {
    let (p, qq) = (&c.p, &c.q);
    [
        lam_i(c),
        m(vec![(1, 3, one()), (2, 4, c.k(p.clone()))]),
        m(vec![(3, 2, one()), (4, 1, c.k(qq.clone()))]),
        m(vec![(1, 2, one()), (2, 1, c.k(p * qq)), (3, 4, c.k(-p)), (4, 3, c.k(-qq))]),
    ]
}

pub fn s9<R: Ring>(c: &Ctx<R>) -> Mats<R> {
    let (p, qq) = (&c.p, &c.q);
    let inv2q = (&i(2) * qq).inv().expect("q checked nonzero");
    [
        lam_i(c),
        m(vec![(1, 3, one()), (2, 4, c.k(p.clone()))]),
        m(vec![(1, 4, one()), (2, 3, c.k(qq.clone())), (3, 2, c.ls(inv2q.clone())), (4, 1, c.ls(q(1, 2)))]),
        m(vec![
            (1, 2, c.ls(inv2q.clone())),
            (2, 1, c.ls(p * &q(1, 2))),
            (3, 4, c.ls(-&(p * &inv2q))),
            (4, 3, c.ls(q(-1, 2))),
        ]),
    ]
}

pub fn s10<R: Ring>(c: &Ctx<R>) -> Mats<R> {
    let (p, qq, e) = (&c.p, &c.q, &c.eps);
    let inv2p = (&i(2) * p).inv().expect("p checked nonzero");
    let inv2q = (&i(2) * qq).inv().expect("q checked nonzero");
    let w = p - &(e * qq); // p − εq
    [
        lam_i(c),
        m(vec![(1, 3, one()), (2, 4, c.k(p.clone())), (3, 1, c.ls(e * &q(1, 2))), (4, 2, c.ls(e * &inv2p))]),
        m(vec![(1, 4, one()), (2, 3, c.k(qq.clone())), (3, 2, c.ls(inv2q.clone())), (4, 1, c.ls(q(1, 2)))]),
        m(vec![
            (1, 2, c.ls(&(&w * &inv2p) / qq)),
            (2, 1, c.ls(&w * &q(1, 2))),
            (3, 4, c.ls(-&(&w * &inv2q))),
            (4, 3, c.ls(-&(&w * &inv2p))),
        ]),
    ]
}

fn diag_family<R: Ring>(h: GradedMatrix<R>) -> Mats<R> {
    [h, m(vec![(1, 3, one())]), m(vec![(1, 4, one())]), m(vec![(1, 2, one())])]
}

pub fn s11<R: Ring>(c: &Ctx<R>) -> Mats<R> {
    let l = || c.lambda.clone();
    diag_family(d(l(), c.lm(&i(1)), l(), l()))
}

pub fn s12<R: Ring>(c: &Ctx<R>) -> Mats<R> {
    let l = || c.lambda.clone();
    diag_family(d(l(), l(), l(), c.lm(&i(1))))
}

pub fn s14<R: Ring>(c: &Ctx<R>) -> Mats<R> {
    let l = || c.lambda.clone();
    [d(l(), c.mu.clone(), l(), c.lm(&i(1))), m(vec![(1, 3, one())]), m(vec![(1, 4, one())]), m(vec![(4, 3, one())])]
}

pub fn s14_mu<R: Ring>(c: &Ctx<R>) -> Mats<R> {
    let l = || c.lambda.clone();
    let (p, qq) = (&c.p, &c.q);
    [
        d(l(), c.lm(&i(-1)), l(), c.lm(&i(1))),
        m(vec![(1, 3, one())]),
        m(vec![(1, 4, one()), (2, 3, c.k(qq.clone()))]),
        m(vec![(1, 2, c.k(p.clone())), (4, 3, c.k(&i(1) - &(p * qq)))]),
    ]
}

pub fn s15<R: Ring>(c: &Ctx<R>) -> Mats<R> {
    let l = || c.lambda.clone();
    [d(l(), c.mu.clone(), l(), c.lm(&i(1))), m(vec![(1, 3, one())]), m(vec![(1, 4, one())]), m(vec![(3, 4, one())])]
}

pub fn s15_mu<R: Ring>(c: &Ctx<R>) -> Mats<R> {
    let l = || c.lambda.clone();
    let (p, qq) = (&c.p, &c.q);
    [
        d(l(), c.lm(&i(1)), l(), c.lm(&i(1))),
        m(vec![(1, 3, one()), (2, 4, c.k(p.clone()))]),
        m(vec![(1, 4, one())]),
        m(vec![(1, 2, c.k(qq.clone())), (3, 4, c.k(&i(1) - &(p * qq)))]),
    ]
}

pub fn s16<R: Ring>(c: &Ctx<R>) -> Mats<R> {
    let l = || c.lambda.clone();
    [d(l(), c.lm(&i(1)), l(), c.mu.clone()), m(vec![(1, 3, one())]), m(vec![(3, 2, one())]), m(vec![(1, 2, one())])]
}

pub fn s16_mu_plus<R: Ring>(c: &Ctx<R>) -> Mats<R> {
    let l = || c.lambda.clone();
    let p = &c.p;
    [
        d(l(), c.lm(&i(1)), l(), c.lm(&i(-1))),
        m(vec![(1, 3, one())]),
        m(vec![(3, 2, one()), (4, 1, c.k(-p))]),
        m(vec![(1, 2, one()), (4, 3, c.k(p.clone()))]),
    ]
}

pub fn s16_mu_minus<R: Ring>(c: &Ctx<R>) -> Mats<R> {
    let l = || c.lambda.clone();
    let p = &c.p;
    [
        d(l(), c.lm(&i(1)), l(), c.lm(&i(1))),
        m(vec![(1, 3, one()), (2, 4, c.k(p.clone()))]),
        m(vec![(3, 2, one())]),
        m(vec![(1, 2, one()), (3, 4, c.k(-p))]),
    ]
}

pub fn s17<R: Ring>(c: &Ctx<R>) -> Mats<R> {
    let l = || c.lambda.clone();
    diag_family(d(l(), c.lm(&c.x), l(), c.lm(&i(1))))
}

pub fn s18<R: Ring>(c: &Ctx<R>) -> Mats<R> {
    diag_family(d(c.lambda.clone(), c.lm(&c.z), c.lm(&i(1)), c.lm(&c.y)))
}

pub fn s18_z_ym1<R: Ring>(c: &Ctx<R>) -> Mats<R> {
    let p = &c.p;
    [
        d(c.lambda.clone(), c.lm(&(&c.y - &i(1))), c.lm(&i(1)), c.lm(&c.y)),
        m(vec![(1, 3, one()), (2, 4, c.k(p.clone()))]),
        m(vec![(1, 4, one())]),
        m(vec![(1, 2, one()), (3, 4, c.k(-p))]),
    ]
}

pub fn s18_z_1my<R: Ring>(c: &Ctx<R>) -> Mats<R> {
    let p = &c.p;
    [
        d(c.lambda.clone(), c.lm(&(&i(1) - &c.y)), c.lm(&i(1)), c.lm(&c.y)),
        m(vec![(1, 3, one())]),
        m(vec![(1, 4, one()), (2, 3, c.k(-p))]),
        m(vec![(1, 2, one()), (4, 3, c.k(p.clone()))]),
    ]
}

pub fn s18_z0_y1<R: Ring>(c: &Ctx<R>) -> Mats<R> {
    let (p, qq) = (&c.p, &c.q);
    let l = || c.lambda.clone();
    [
        d(l(), l(), c.lm(&i(1)), c.lm(&i(1))),
        m(vec![(1, 3, one()), (2, 4, c.k(p.clone()))]),
        m(vec![(1, 4, one()), (2, 3, c.k(-qq))]),
        m(vec![(1, 2, one()), (2, 1, c.k(-&(p * qq))), (3, 4, c.k(-p)), (4, 3, c.k(qq.clone()))]),
    ]
}

pub fn s19<R: Ring>(c: &Ctx<R>) -> Mats<R> {
    [
        d(c.lambda.clone(), c.mu.clone(), c.lm(&i(1)), c.lm(&c.x)),
        m(vec![(1, 3, one())]),
        m(vec![(1, 4, one())]),
        m(vec![(4, 3, one())]),
    ]
}

fn s19_mu_common<R: Ring>(c: &Ctx<R>, q10: GradedMatrix<R>) -> Mats<R> {
    let (p, qq) = (&c.p, &c.q);
    [
        d(c.lambda.clone(), c.lm(&(&i(1) - &c.x)), c.lm(&i(1)), c.lm(&c.x)),
        q10,
        m(vec![(1, 4, one()), (2, 3, c.k(qq.clone()))]),
        m(vec![(1, 2, c.k(p.clone())), (4, 3, c.k(&i(1) - &(p * qq)))]),
    ]
}

/// S19, μ = λ + x − 1, as printed (Q10 carries an extra p at (2,4)).
pub fn s19_mu_printed<R: Ring>(c: &Ctx<R>) -> Mats<R> {
    s19_mu_common(c, m(vec![(1, 3, one()), (2, 4, c.k(c.p.clone()))]))
}

/// S19, μ = λ + x − 1, without the (2,4) entry of Q10.
pub fn s19_mu_corrected<R: Ring>(c: &Ctx<R>) -> Mats<R> {
    s19_mu_common(c, m(vec![(1, 3, one())]))
}

pub fn s20<R: Ring>(c: &Ctx<R>) -> Mats<R> {
    [
        d(c.lambda.clone(), c.mu.clone(), c.lm(&i(1)), c.lm(&i(1))),
        m(vec![(1, 3, one())]),
        m(vec![(1, 4, one())]),
        m(vec![(3, 4, one()), (4, 3, c.k(c.eps.clone()))]),
    ]
}

pub fn s20_mu<R: Ring>(c: &Ctx<R>) -> Mats<R> {
    let (p, qq, e) = (&c.p, &c.q, &c.eps);
    let one_pq = &i(1) - &(p * qq);
    [
        d(c.lambda.clone(), c.lambda.clone(), c.lm(&i(1)), c.lm(&i(1))),
        m(vec![(1, 3, one()), (2, 4, c.k(p.clone()))]),
        m(vec![(1, 4, one()), (2, 3, c.k(c.ep()))]),
        m(vec![
            (1, 2, c.k(qq.clone())),
            (2, 1, c.k(&(e * &(p * p)) * qq)),
            (3, 4, c.k(one_pq.clone())),
            (4, 3, c.k(e * &one_pq)),
        ]),
    ]
}

fn s21_h<R: Ring>(c: &Ctx<R>, h4: R) -> GradedMatrix<R> {
    d(c.lambda.clone(), c.lm(&(&i(1) + &c.y)), c.lm(&i(1)), h4)
}

pub fn s21<R: Ring>(c: &Ctx<R>) -> Mats<R> {
    [s21_h(c, c.mu.clone()), m(vec![(1, 3, one())]), m(vec![(3, 2, one())]), m(vec![(1, 2, one())])]
}

pub fn s21_mu_a<R: Ring>(c: &Ctx<R>) -> Mats<R> {
    let p = &c.p;
    [
        s21_h(c, c.lm(&(&i(2) + &c.y))),
        m(vec![(1, 3, one()), (2, 4, c.k(p.clone()))]),
        m(vec![(3, 2, one())]),
        m(vec![(1, 2, one()), (3, 4, c.k(-p))]),
    ]
}

pub fn s21_mu_b<R: Ring>(c: &Ctx<R>) -> Mats<R> {
    let p = &c.p;
    [
        s21_h(c, c.lm(&-&c.y)),
        m(vec![(1, 3, one())]),
        m(vec![(3, 2, one()), (4, 1, c.k(-p))]),
        m(vec![(1, 2, one()), (4, 3, c.k(p.clone()))]),
    ]
}

pub fn s21_mu_c<R: Ring>(c: &Ctx<R>) -> Mats<R> {
    [
        s21_h(c, c.lm(&c.y)),
        m(vec![(1, 3, one())]),
        m(vec![(1, 4, c.k(c.p.clone())), (3, 2, one())]),
        m(vec![(1, 2, one())]),
    ]
}

// ---- catalogue ------------------------------------------------------------

/// Relation a variant imposes on the family's table parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LabelCondition {
    None,
    XHalf,
    YIsOneMinusZ,
    ZIsYMinusOne,
    ZIsOneMinusY,
    ZZeroYOne,
}

impl LabelCondition {
    fn holds(self, l: &TableLabel) -> bool {
        let p = &l.params;
        match self {
            LabelCondition::None => true,
            LabelCondition::XHalf => p[0] == q(1, 2),
            LabelCondition::YIsOneMinusZ => p[0] == &i(1) - &p[1],
            LabelCondition::ZIsYMinusOne => p[1] == &p[0] - &i(1),
            LabelCondition::ZIsOneMinusY => p[1] == &i(1) - &p[0],
            LabelCondition::ZZeroYOne => p[0] == i(1) && p[1].is_zero(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Printed,
    /// Replacement for the printed variant `replaces`, which does not close.
    Corrected { replaces: &'static str, note: &'static str },
}

#[derive(Clone)]
pub struct Variant {
    pub family: Family,
    pub name: &'static str,
    pub source: Source,
    /// Representation parameters beyond the table label, among λ, μ, p, q.
    pub params: &'static [&'static str],
    /// Parameters that sit in a denominator.
    pub nonzero: &'static [&'static str],
    pub condition: LabelCondition,
    pub build: fn(&Ctx<Scalar>) -> Mats<Scalar>,
}

impl std::fmt::Debug for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}[{}]", self.family, self.name)
    }
}

impl Variant {
    pub fn id(&self) -> String {
        format!("{}[{}]", self.family, self.name)
    }

    pub fn is_printed(&self) -> bool {
        self.source == Source::Printed
    }
}

const LM: &[&str] = &["lambda", "mu"];
const L: &[&str] = &["lambda"];
const LP: &[&str] = &["lambda", "p"];
const LPQ: &[&str] = &["lambda", "p", "q"];
const P: &[&str] = &["p"];
const PQ: &[&str] = &["p", "q"];
const Q: &[&str] = &["q"];
const NONE: &[&str] = &[];

fn v(
    family: Family,
    name: &'static str,
    params: &'static [&'static str],
    nonzero: &'static [&'static str],
    condition: LabelCondition,
    build: fn(&Ctx<Scalar>) -> Mats<Scalar>,
) -> Variant {
    Variant { family, name, source: Source::Printed, params, nonzero, condition, build }
}

fn fix(mut var: Variant, replaces: &'static str, note: &'static str) -> Variant {
    var.source = Source::Corrected { replaces, note };
    var
}

/// Every family variant, printed ones first within each family.
pub fn variants() -> Vec<Variant> {
    use Family::{A, S};
    use LabelCondition as C;
    vec![
        v(A(1), "general", LM, NONE, C::None, a1::<Scalar>),
        v(A(1), "mu=lambda", L, NONE, C::None, a1_mu::<Scalar>),
        v(A(2), "general", LM, NONE, C::None, a2::<Scalar>),
        v(A(2), "mu=lambda", LPQ, NONE, C::None, a2_mu::<Scalar>),
        v(A(3), "general", LP, NONE, C::None, a3::<Scalar>),
        v(A(4), "general", LM, NONE, C::None, a4::<Scalar>),
        v(A(4), "mu=lambda", LP, NONE, C::None, a4_mu::<Scalar>),
        v(A(6), "x=1/2", L, NONE, C::XHalf, a6_half::<Scalar>),
        v(A(7), "general", LPQ, NONE, C::None, a7::<Scalar>),
        v(A(8), "general", L, NONE, C::None, a8::<Scalar>),
        v(A(8), "y=1-z", LP, NONE, C::YIsOneMinusZ, a8_y_1mz::<Scalar>),
        v(S(1), "general", LPQ, NONE, C::None, s1::<Scalar>),
        v(S(2), "general", LP, P, C::None, s2::<Scalar>),
        v(S(3), "general", LP, P, C::None, s3::<Scalar>),
        v(S(4), "general", LP, NONE, C::None, s4::<Scalar>),
        v(S(5), "general", LP, P, C::None, s5::<Scalar>),
        v(S(6), "general", LM, NONE, C::None, s6::<Scalar>),
        v(S(6), "mu=lambda", LPQ, NONE, C::None, s6_mu_printed::<Scalar>),
        fix(
            v(S(6), "mu=lambda corrected", LPQ, NONE, C::None, s6_mu_corrected::<Scalar>),
            "mu=lambda",
            "epsilon restored in Q01(2,3) = eps p and in Z(3,4) = eps(1 - eps pq), Z(4,3) = 1 - eps pq",
        ),
        v(S(7), "first", LP, &["lambda", "p"], C::None, s7_first_printed),
        fix(
            v(S(7), "first corrected", LP, P, C::None, s7_first_corrected::<Scalar>),
            "first",
            "Q10(3,1) = eps lambda / 2 instead of eps / (2 lambda)",
        ),
        v(S(7), "second", LP, P, C::None, s7_second::<Scalar>),
        v(S(8), "general", LM, NONE, C::None, s8::<Scalar>),
        v(S(8), "second", LPQ, NONE, C::None, s8_second::<Scalar>),
        v(S(9), "general", LPQ, Q, C::None, s9::<Scalar>),
        v(S(10), "general", LPQ, PQ, C::None, s10::<Scalar>),
        v(S(11), "general", L, NONE, C::None, s11::<Scalar>),
        v(S(12), "general", L, NONE, C::None, s12::<Scalar>),
        v(S(14), "general", LM, NONE, C::None, s14::<Scalar>),
        v(S(14), "mu=lambda", LPQ, NONE, C::None, s14_mu::<Scalar>),
        v(S(15), "general", LM, NONE, C::None, s15::<Scalar>),
        v(S(15), "mu=lambda-1", LPQ, NONE, C::None, s15_mu::<Scalar>),
        v(S(16), "general", LM, NONE, C::None, s16::<Scalar>),
        v(S(16), "mu=lambda+1", LP, NONE, C::None, s16_mu_plus::<Scalar>),
        v(S(16), "mu=lambda-1", LP, NONE, C::None, s16_mu_minus::<Scalar>),
        v(S(17), "general", L, NONE, C::None, s17::<Scalar>),
        v(S(18), "general", L, NONE, C::None, s18::<Scalar>),
        v(S(18), "z=y-1", LP, NONE, C::ZIsYMinusOne, s18_z_ym1::<Scalar>),
        v(S(18), "z=1-y", LP, NONE, C::ZIsOneMinusY, s18_z_1my::<Scalar>),
        v(S(18), "z=0,y=1", LPQ, NONE, C::ZZeroYOne, s18_z0_y1::<Scalar>),
        v(S(19), "general", LM, NONE, C::None, s19::<Scalar>),
        v(S(19), "mu=lambda+x-1", LPQ, NONE, C::None, s19_mu_printed::<Scalar>),
        fix(
            v(S(19), "mu=lambda+x-1 corrected", LPQ, NONE, C::None, s19_mu_corrected::<Scalar>),
            "mu=lambda+x-1",
            "Q10 without the (2,4) entry p",
        ),
        v(S(20), "general", LM, NONE, C::None, s20::<Scalar>),
        v(S(20), "mu=lambda", LPQ, NONE, C::None, s20_mu::<Scalar>),
        v(S(21), "general", LM, NONE, C::None, s21::<Scalar>),
        v(S(21), "mu=lambda-y-2", LP, NONE, C::None, s21_mu_a::<Scalar>),
        v(S(21), "mu=lambda+y", LP, NONE, C::None, s21_mu_b::<Scalar>),
        v(S(21), "mu=lambda-y", LP, NONE, C::None, s21_mu_c::<Scalar>),
    ]
}

pub fn variants_for(family: Family) -> Vec<Variant> {
    variants().into_iter().filter(|v| v.family == family).collect()
}

pub fn find_variant(family: Family, name: &str) -> Result<Variant, MatrepError> {
    variants_for(family)
        .into_iter()
        .find(|v| v.name == name)
        .ok_or_else(|| MatrepError::UnknownVariant(format!("{family}[{name}]")))
}

/// Whether the label is one of the cases without a printed representation.
pub fn is_excluded(label: &TableLabel) -> bool {
    match label.family {
        Family::A(5) | Family::S(13) => true,
        Family::A(6) => label.params.first() != Some(&q(1, 2)),
        _ => false,
    }
}

fn ctx_from(label: &TableLabel, params: &BTreeMap<String, Scalar>) -> Ctx<Scalar> {
    let get = |k: &str| params.get(k).cloned().unwrap_or_else(Scalar::zero);
    let lp = &label.params;
    let (x, y, z) = match label.family {
        Family::A(6) | Family::S(17) | Family::S(19) => (lp[0].clone(), Scalar::zero(), Scalar::zero()),
        Family::A(8) | Family::S(18) => (Scalar::zero(), lp[0].clone(), lp[1].clone()),
        Family::S(21) => (Scalar::zero(), lp[0].clone(), Scalar::zero()),
        _ => (Scalar::zero(), Scalar::zero(), Scalar::zero()),
    };
    Ctx {
        lambda: get("lambda"),
        mu: get("mu"),
        p: get("p"),
        q: get("q"),
        eps: Scalar::int(label.eps.unwrap_or(1) as i64),
        x,
        y,
        z,
    }
}

/// Materialize a family variant for a table label and named parameters.
pub fn family_rep(
    label: &TableLabel,
    variant: &str,
    params: &BTreeMap<String, Scalar>,
) -> Result<Representation, MatrepError> {
    if is_excluded(label) {
        return Err(MatrepError::Excluded(label.to_string()));
    }
    let constants = table_entry(label).map_err(|e| MatrepError::Label(e.to_string()))?;
    let var = find_variant(label.family, variant)?;
    if !var.condition.holds(label) {
        return Err(MatrepError::Condition { variant: var.id(), label: label.to_string() });
    }
    for k in params.keys() {
        if !var.params.contains(&k.as_str()) {
            return Err(MatrepError::UnknownParameter(k.clone()));
        }
    }
    for k in var.params {
        if !params.contains_key(*k) {
            return Err(MatrepError::MissingParameter(k.to_string()));
        }
    }
    for k in var.nonzero {
        if params[*k].is_zero() {
            return Err(MatrepError::ZeroParameter(k.to_string()));
        }
    }
    let mats = (var.build)(&ctx_from(label, params));
    let rep = Representation::new(constants, mats);
    let names = rep.names();
    if let Some(k) = rep.mats.iter().position(GradedMatrix::is_zero) {
        return Err(MatrepError::VanishingGenerator(names[k].to_string()));
    }
    Ok(rep)
}

/// Families whose λ may be promoted to the central symbol ∂.
pub const PROMOTABLE: [(Family, &str); 2] = [(Family::A(1), "mu=lambda"), (Family::S(7), "second")];

/// The family matrices with λ (and μ = λ) replaced by ∂; S7's second
/// variant is taken at p = 1.
pub fn promote_to_d(label: &TableLabel, variant: &str) -> Result<Representation<DPoly>, MatrepError> {
    let constants = table_entry(label).map_err(|e| MatrepError::Label(e.to_string()))?;
    let c = Ctx {
        lambda: DPoly::d(),
        mu: DPoly::d(),
        p: Scalar::one(),
        q: Scalar::zero(),
        eps: Scalar::int(label.eps.unwrap_or(1) as i64),
        x: Scalar::zero(),
        y: Scalar::zero(),
        z: Scalar::zero(),
    };
    let mats = match (label.family, variant) {
        (Family::A(1), "mu=lambda") => a1_mu(&c),
        (Family::S(7), "second") => s7_second(&c),
        _ => return Err(MatrepError::UnknownVariant(format!("{}[{variant}] (not promotable)", label.family))),
    };
    Ok(Representation::new(constants, mats))
}

fn bounded<R: Rng>(rng: &mut R) -> Scalar {
    // |t| ≤ 1 with numerators and denominators bounded by 20
    let den = rng.gen_range(1..=20i64);
    Scalar::frac(rng.gen_range(-den..=den), den)
}

fn bounded_nonzero<R: Rng>(rng: &mut R) -> Scalar {
    loop {
        let t = bounded(rng);
        if !t.is_zero() {
            return t;
        }
    }
}

/// A random table label compatible with the variant (respecting the table
/// restrictions over ℝ) together with random nonzero representation
/// parameters.
pub fn random_instance<R: Rng>(var: &Variant, rng: &mut R) -> (TableLabel, BTreeMap<String, Scalar>) {
    let fam = var.family;
    let eps = fam.has_eps().then(|| if rng.gen_bool(0.5) { 1 } else { -1 });
    let lp: Vec<Scalar> = match (fam, var.condition) {
        (_, LabelCondition::XHalf) => vec![q(1, 2)],
        (_, LabelCondition::YIsOneMinusZ) => {
            // 1/2 ≤ z ≤ 1 keeps |1 − z| ≤ |z| ≤ 1
            let t = bounded(rng);
            let t = if t.is_negative_real() { -t } else { t };
            let z = &(&i(1) + &t) * &q(1, 2);
            vec![&i(1) - &z, z]
        }
        (_, LabelCondition::ZIsYMinusOne) => {
            let y = bounded_nonzero(rng);
            vec![y.clone(), &y - &i(1)]
        }
        (_, LabelCondition::ZIsOneMinusY) => {
            let y = bounded_nonzero(rng);
            vec![y.clone(), &i(1) - &y]
        }
        (_, LabelCondition::ZZeroYOne) => vec![i(1), i(0)],
        (Family::A(8), _) => {
            let z = bounded(rng);
            let y = &z * &bounded(rng);
            vec![y, z]
        }
        (Family::S(17) | Family::S(19), _) => vec![nonzero(rng, Field::Real)],
        (Family::S(18), _) => vec![bounded_nonzero(rng), nonzero(rng, Field::Real)],
        (Family::S(21), _) => vec![bounded_nonzero(rng)],
        _ => vec![],
    };
    let label = TableLabel { family: fam, eps, params: lp };
    let params = var.params.iter().map(|k| (k.to_string(), nonzero(rng, Field::Real))).collect();
    (label, params)
}

/// Outcome of `draws` random instances of one variant: the number that
/// closed and the first failing instance, if any.
pub fn sample_variant(var: &Variant, draws: usize, seed: u64) -> (usize, Option<String>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut passed = 0;
    let mut first = None;
    let mut n = 0;
    while n < draws {
        let (label, params) = random_instance(var, &mut rng);
        let rep = match family_rep(&label, var.name, &params) {
            Ok(r) => r,
            // degenerate draw (a generator vanishes): resample
            Err(MatrepError::VanishingGenerator(_)) => continue,
            Err(e) => {
                first.get_or_insert_with(|| format!("{label}: {e}"));
                n += 1;
                continue;
            }
        };
        n += 1;
        let v = verify_rep(&rep);
        if v.ok() {
            passed += 1;
        } else if first.is_none() {
            let bad: Vec<String> =
                v.relations.iter().filter(|r| !r.residual.is_zero()).map(|r| r.relation.clone()).collect();
            let ps: Vec<String> = params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            first = Some(format!("{label} {} fails {}", ps.join(" "), bad.join("; ")));
        }
    }
    (passed, first)
}

/// Closure of every variant over `draws` random parameter draws each.
pub fn closure_report(draws: usize, seed: u64) -> Report {
    let vars = variants();
    let results: Vec<(usize, Option<String>)> =
        vars.par_iter().enumerate().map(|(k, v)| sample_variant(v, draws, seed.wrapping_add(k as u64))).collect();
    let mut rep = Report::new();
    for (v, (passed, first)) in vars.iter().zip(results) {
        let name = match v.source {
            Source::Printed => format!("{} closes on {draws} random draws", v.id()),
            Source::Corrected { replaces, .. } => {
                format!("{} (replacing printed {replaces}) closes on {draws} random draws", v.id())
            }
        };
        let mut c = if passed == draws {
            Check::pass(name)
        } else {
            Check::fail(name, format!("{passed}/{draws} closed; first failure: {}", first.unwrap_or_default()))
        };
        if let Source::Corrected { note, .. } = v.source {
            c = c.detail(note);
        }
        rep.push(c.anchor("minimal matrix representations of the graded (super)algebras"));
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrep::rep::verify_rep;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn params(kv: &[(&str, Scalar)]) -> BTreeMap<String, Scalar> {
        kv.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
    }

    #[test]
    fn a1_general_closes() {
        for e in [1, -1] {
            let l = TableLabel::with_eps(Family::A(1), e);
            let r = family_rep(&l, "general", &params(&[("lambda", i(3)), ("mu", q(1, 2))])).unwrap();
            assert!(verify_rep(&r).ok());
        }
    }

    #[test]
    fn wrong_constants_fail() {
        let l = TableLabel::with_eps(Family::A(1), 1);
        let mut r = family_rep(&l, "general", &params(&[("lambda", i(3)), ("mu", q(1, 2))])).unwrap();
        r.constants = table_entry(&TableLabel::with_eps(Family::A(2), 1)).unwrap();
        assert!(!verify_rep(&r).ok());
    }

    #[test]
    fn errors() {
        let l = TableLabel::with_eps(Family::S(13), 1);
        assert!(matches!(family_rep(&l, "general", &BTreeMap::new()), Err(MatrepError::Excluded(_))));
        let l = TableLabel::new(Family::S(2));
        let e = family_rep(&l, "general", &params(&[("lambda", i(1)), ("p", i(0))]));
        assert!(matches!(e, Err(MatrepError::ZeroParameter(_))));
        let l = TableLabel::new(Family::A(7));
        let e = family_rep(&l, "general", &params(&[("lambda", i(0)), ("p", i(1)), ("q", i(1))]));
        assert!(matches!(e, Err(MatrepError::VanishingGenerator(_))));
    }

    #[test]
    fn promoted_families_close() {
        for (fam, var) in PROMOTABLE {
            for e in [1, -1] {
                let r = promote_to_d(&TableLabel::with_eps(fam, e), var).unwrap();
                assert!(verify_rep(&r).ok(), "{fam} {e}");
                assert!(r.mats[0].get(0, 0) == &DPoly::d());
            }
        }
        assert!(promote_to_d(&TableLabel::new(Family::A(7)), "general").is_err());
    }

    #[test]
    fn random_instances_are_well_formed() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for var in variants() {
            for _ in 0..5 {
                let (label, _) = random_instance(&var, &mut rng);
                assert!(label.check_restrictions(Field::Real).is_ok(), "{label}");
                assert!(var.condition.holds(&label));
            }
        }
    }
}
