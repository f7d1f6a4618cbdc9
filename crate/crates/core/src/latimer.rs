//! Constructive Latimer–MacDuffee correspondence in degree 2.
//!
//! A primitive form `(a, b, c)` of discriminant `D'` gives the lattice
//! `I = Z·|a| + Z·(-b + √D')/2`, an invertible ideal of the order of
//! discriminant `D'`. When that order contains `Z[λ]` (`D = g^2·D'`),
//! multiplication by `λ = (t + √D)/2` on the basis of `I` is the integer matrix
//!
//! ```text
//! [[(t + g·b)/2, -g·c·sign(a)], [g·|a|, (t - g·b)/2]]
//! ```
//!
//! with characteristic polynomial `x^2 - t x + n`. Running over the wide
//! ideal classes of `Z[λ]` gives one matrix per GL2(Z)-class whose
//! eigenvector lattice has multiplier ring exactly `Z[λ]`; adding the classes
//! of every overorder gives all GL2(Z)-classes with that polynomial.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::forms::{class_set_with, BQForm, EquivMode};
use crate::matrix::{CharPoly, IntMat2};
use crate::order::{order_disc, OrderDisc};

/// The ideal with `Z`-basis `(norm, (-b + √D)/2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealRep {
    #[serde(serialize_with = "crate::json::int")]
    pub norm: BigInt,
    #[serde(serialize_with = "crate::json::int")]
    pub b: BigInt,
    #[serde(rename = "D", serialize_with = "crate::json::int")]
    pub disc: BigInt,
}

impl IdealRep {
    /// `(b^2 - D) / (4·norm)`; the divisibility is what makes the lattice an ideal.
    fn cofactor(&self) -> Result<BigInt> {
        let num = &self.b * &self.b - &self.disc;
        let den = BigInt::from(4) * &self.norm;
        if !self.norm.is_positive() || !num.is_multiple_of(&den) {
            return Err(Error::Internal(format!(
                "({}, {}) is not an ideal of discriminant {}",
                self.norm, self.b, self.disc
            )));
        }
        Ok(num / den)
    }
}

pub fn form_to_ideal(q: &BQForm) -> Result<IdealRep> {
    let q = BQForm::new(q.a().clone(), q.b().clone(), q.c().clone())?;
    let ideal = IdealRep {
        norm: q.a().abs(),
        b: q.b().clone(),
        disc: q.disc(),
    };
    ideal.cofactor()?;
    Ok(ideal)
}

/// Matrix of `x ↦ λx` on the basis of `ideal`, where `λ` is a root of `p`.
///
/// The ideal may belong to any order containing `Z[λ]`.
pub fn multiplication_matrix(ideal: &IdealRep, p: &CharPoly) -> Result<IntMat2> {
    let c = ideal.cofactor()?;
    let disc = p.disc();
    let (g2, rem) = disc.div_rem(&ideal.disc);
    let g = g2.sqrt();
    if !rem.is_zero() || &g * &g != g2 || g.is_zero() {
        return Err(Error::Internal(format!(
            "ideal discriminant {} does not divide {} by a square",
            ideal.disc, disc
        )));
    }
    let gb = &g * &ideal.b;
    let two = BigInt::from(2);
    if !(&p.t + &gb).is_multiple_of(&two) {
        return Err(Error::Internal("trace parity mismatch".into()));
    }
    let m = IntMat2 {
        a: (&p.t + &gb) / &two,
        b: -(&g * &c),
        c: &g * &ideal.norm,
        d: (&p.t - &gb) / &two,
    };
    if m.trace() != p.t || m.det() != p.n {
        return Err(Error::Internal(format!(
            "multiplication matrix {m} does not have polynomial {p}"
        )));
    }
    Ok(m)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LMRep {
    pub matrix: IntMat2,
    pub form: BQForm,
    pub ideal: IdealRep,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LMSet {
    pub poly: CharPoly,
    pub order: OrderDisc,
    pub reps: Vec<LMRep>,
}

impl LMSet {
    pub fn matrices(&self) -> Vec<IntMat2> {
        self.reps.iter().map(|r| r.matrix.clone()).collect()
    }
}

fn reps_for_order(p: &CharPoly, order: &OrderDisc, exec: Exec) -> Result<Vec<LMRep>> {
    let classes = class_set_with(order, EquivMode::Improper, exec)?;
    let mut out = Vec::with_capacity(classes.reps.len());
    for (i, rep) in classes.reps.iter().enumerate() {
        let form = if i == 0 && order.disc == p.disc() {
            // principal class, realized so that Z[λ] itself gives the companion matrix
            BQForm::new(BigInt::one(), -&p.t, p.n.clone())?
        } else {
            rep.clone()
        };
        let ideal = form_to_ideal(&form)?;
        let matrix = multiplication_matrix(&ideal, p)?;
        out.push(LMRep {
            matrix,
            form,
            ideal,
        });
    }
    Ok(out)
}

/// One matrix per wide ideal class of `Z[λ]`, principal class first as the
/// companion matrix.
pub fn lm_representatives(p: &CharPoly) -> Result<LMSet> {
    lm_representatives_with(p, Exec::default())
}

pub fn lm_representatives_with(p: &CharPoly, exec: Exec) -> Result<LMSet> {
    let order = order_disc(p)?;
    let reps = reps_for_order(p, &order, exec)?;
    debug_assert_eq!(reps[0].matrix, p.companion());
    Ok(LMSet {
        poly: p.clone(),
        order,
        reps,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimilarityClass {
    /// Discriminant of the multiplier ring of the eigenvector lattice.
    #[serde(serialize_with = "crate::json::int")]
    pub multiplier_disc: BigInt,
    #[serde(flatten)]
    pub rep: LMRep,
}

/// Every GL2(Z)-similarity class with characteristic polynomial `p`: the
/// ideal classes of each order between `Z[λ]` and `O_K`, starting with
/// `Z[λ]` itself.
pub fn similarity_classes(p: &CharPoly) -> Result<Vec<SimilarityClass>> {
    let order = order_disc(p)?;
    let mut out = Vec::new();
    for over in order.overorders() {
        for rep in reps_for_order(p, &over, Exec::default())? {
            out.push(SimilarityClass {
                multiplier_disc: over.disc.clone(),
                rep,
            });
        }
    }
    Ok(out)
}
