//! Binary quadratic forms `a x^2 + b xy + c y^2` of non-square discriminant.
//!
//! # Action convention
//!
//! A matrix `U = [[α, β], [γ, δ]]` acts on the right of a form by
//!
//! ```text
//! (q·U)(x, y) = det(U) · q(αx + βy, γx + δy)
//! ```
//!
//! so `(q·U)·V = q·(UV)`. For proper `U` (det 1) this is plain substitution.
//! For improper `U` the sign twist is what makes the action match
//! GL2(Z)-similarity of matrices: `diag(1, -1)` sends `(a, b, c)` to
//! `(-a, b, -c)`. [`EquivMode::Improper`] classes are therefore the ideal
//! classes of the order in the ordinary (wide) sense and [`EquivMode::Proper`]
//! classes are the narrow ones.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::arith::{gcd3, is_square, isqrt};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::json::JsonInt;
use crate::matrix::{mat_inv, IntMat2};
use crate::order::OrderDisc;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BQForm {
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

impl BQForm {
    /// Primitive form of non-square discriminant; definite forms need `a > 0`.
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Result<Self> {
        let q = BQForm {
            a: a.into(),
            b: b.into(),
            c: c.into(),
        };
        let disc = q.disc();
        if disc.is_zero() || is_square(&disc) {
            return Err(Error::InvalidDiscriminant { disc });
        }
        if !gcd3(&q.a, &q.b, &q.c).is_one() {
            return Err(Error::NotPrimitive {
                a: q.a,
                b: q.b,
                c: q.c,
            });
        }
        if disc.is_negative() && !q.a.is_positive() {
            return Err(Error::NegativeDefinite {
                a: q.a,
                b: q.b,
                c: q.c,
            });
        }
        Ok(q)
    }

    pub(crate) fn raw(a: BigInt, b: BigInt, c: BigInt) -> Self {
        BQForm { a, b, c }
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    pub fn disc(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        &self.a * x * x + &self.b * x * y + &self.c * y * y
    }

    /// Right action `q·U`, see the module docs.
    pub fn act(&self, u: &IntMat2) -> BQForm {
        let a = self.eval(&u.a, &u.c);
        let c = self.eval(&u.b, &u.d);
        let b = BigInt::from(2) * &self.a * &u.a * &u.b
            + &self.b * (&u.a * &u.d + &u.b * &u.c)
            + BigInt::from(2) * &self.c * &u.c * &u.d;
        let det = u.det();
        BQForm {
            a: a * &det,
            b: b * &det,
            c: c * &det,
        }
    }

    /// `q·diag(1, -1) = (-a, b, -c)`.
    pub fn twist(&self) -> BQForm {
        BQForm {
            a: -&self.a,
            b: self.b.clone(),
            c: -&self.c,
        }
    }

    /// `(a, -b, c)`, the inverse class.
    pub fn opposite(&self) -> BQForm {
        BQForm {
            a: self.a.clone(),
            b: -&self.b,
            c: self.c.clone(),
        }
    }

    /// Reduced in the indefinite sense: `|√D - 2|a|| < b < √D`.
    pub fn is_reduced_indefinite(&self) -> bool {
        let s = isqrt(&self.disc());
        let two_a = BigInt::from(2) * self.a.abs();
        self.b.is_positive() && self.b <= s && &two_a + &self.b > s && &two_a - &self.b <= s
    }

    /// Reduced in the definite sense: `|b| ≤ a ≤ c`, `b ≥ 0` on the boundary.
    pub fn is_reduced_definite(&self) -> bool {
        let babs = self.b.abs();
        if !(babs <= self.a && self.a <= self.c) {
            return false;
        }
        if (babs == self.a || self.a == self.c) && self.b.is_negative() {
            return false;
        }
        true
    }

    fn sort_key(&self) -> (BigInt, bool, BigInt, BigInt) {
        (
            self.a.abs(),
            self.a.is_negative(),
            self.b.clone(),
            self.c.clone(),
        )
    }

    pub fn to_tuple(&self) -> (BigInt, BigInt, BigInt) {
        (self.a.clone(), self.b.clone(), self.c.clone())
    }
}

impl fmt::Display for BQForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

impl Serialize for BQForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [JsonInt(&self.a), JsonInt(&self.b), JsonInt(&self.c)].serialize(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EquivMode {
    Proper,
    Improper,
}

impl fmt::Display for EquivMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EquivMode::Proper => "proper",
            EquivMode::Improper => "improper",
        })
    }
}

fn twist_matrix() -> IntMat2 {
    IntMat2::from_rows([[1, 0], [0, -1]])
}

fn translate(k: BigInt) -> IntMat2 {
    IntMat2::new(BigInt::one(), k, BigInt::zero(), BigInt::one())
}

fn swap_matrix() -> IntMat2 {
    IntMat2::from_rows([[0, -1], [1, 0]])
}

/// Gauss reduction with its transformation: returns `(r, U)` with `q·U = r`.
pub fn reduce_definite_with(q: &BQForm) -> Result<(BQForm, IntMat2)> {
    let disc = q.disc();
    if !disc.is_negative() {
        return Err(Error::WrongSignature {
            expected: "definite",
            disc,
        });
    }
    if !q.a.is_positive() {
        return Err(Error::NegativeDefinite {
            a: q.a.clone(),
            b: q.b.clone(),
            c: q.c.clone(),
        });
    }
    let mut cur = q.clone();
    let mut acc = IntMat2::identity();
    loop {
        // translate b into (-a, a]
        let two_a = BigInt::from(2) * &cur.a;
        let k = (&cur.a - &cur.b).div_floor(&two_a);
        if !k.is_zero() {
            let t = translate(k);
            cur = cur.act(&t);
            acc = &acc * &t;
        }
        if cur.a > cur.c || (cur.a == cur.c && cur.b.is_negative()) {
            let s = swap_matrix();
            cur = cur.act(&s);
            acc = &acc * &s;
            continue;
        }
        break;
    }
    debug_assert!(cur.is_reduced_definite());
    Ok((cur, acc))
}

pub fn reduce_definite(q: &BQForm) -> Result<BQForm> {
    reduce_definite_with(q).map(|(r, _)| r)
}

fn require_indefinite(q: &BQForm) -> Result<BigInt> {
    let disc = q.disc();
    if !disc.is_positive() || is_square(&disc) {
        return Err(Error::WrongSignature {
            expected: "indefinite non-square",
            disc,
        });
    }
    Ok(disc)
}

/// One reduction step `q ↦ q·[[0, -1], [1, k]] = (c, b', ·)`, returning the
/// step matrix as well.
pub fn rho_step_with(q: &BQForm) -> Result<(BQForm, IntMat2)> {
    let disc = require_indefinite(q)?;
    let s = isqrt(&disc);
    let c_abs = q.c.abs();
    let two_c = BigInt::from(2) * &c_abs;
    let lo = if c_abs > s {
        BigInt::one() - &c_abs
    } else {
        &s + BigInt::one() - &two_c
    };
    let target = (-&q.b).mod_floor(&two_c);
    let b_new = &lo + (target - &lo).mod_floor(&two_c);
    let k = (&b_new + &q.b) / (BigInt::from(2) * &q.c);
    let step = IntMat2::new(BigInt::zero(), -BigInt::one(), BigInt::one(), k);
    let next = q.act(&step);
    debug_assert_eq!(next.b, b_new);
    Ok((next, step))
}

pub fn rho_step(q: &BQForm) -> Result<BQForm> {
    rho_step_with(q).map(|(r, _)| r)
}

const REDUCTION_CAP: usize = 1_000_000;

/// Iterates rho until the form is reduced: `q·U = r`.
pub fn reduce_indefinite_with(q: &BQForm) -> Result<(BQForm, IntMat2)> {
    require_indefinite(q)?;
    let mut cur = q.clone();
    let mut acc = IntMat2::identity();
    for _ in 0..REDUCTION_CAP {
        if cur.is_reduced_indefinite() {
            return Ok((cur, acc));
        }
        let (next, step) = rho_step_with(&cur)?;
        cur = next;
        acc = &acc * &step;
    }
    Err(Error::Internal(format!(
        "rho reduction of {q} did not terminate"
    )))
}

/// The cycle of reduced forms through the reduction of `q`, paired with the
/// accumulated transformation from `q` to each member.
fn cycle_with(q: &BQForm) -> Result<Vec<(BQForm, IntMat2)>> {
    let (start, mut acc) = reduce_indefinite_with(q)?;
    let mut out = vec![(start.clone(), acc.clone())];
    let mut cur = start.clone();
    for _ in 0..REDUCTION_CAP {
        let (next, step) = rho_step_with(&cur)?;
        acc = &acc * &step;
        if next == start {
            return Ok(out);
        }
        out.push((next.clone(), acc.clone()));
        cur = next;
    }
    Err(Error::Internal(format!("rho cycle of {q} did not close")))
}

pub fn cycle(q: &BQForm) -> Result<Vec<BQForm>> {
    Ok(cycle_with(q)?.into_iter().map(|(f, _)| f).collect())
}

/// Canonical representative of the class of `q` under `mode`, with the
/// transformation reaching it: `q·U = rep`.
///
/// The representative minimizes `(|a|, a < 0, b, c)` over the reduced forms
/// of the class.
pub fn canonical_rep(q: &BQForm, mode: EquivMode) -> Result<(BQForm, IntMat2)> {
    if q.disc().is_negative() {
        // positive definite forms: the reduced form is unique in both modes
        return reduce_definite_with(q);
    }
    let mut members = cycle_with(q)?;
    if mode == EquivMode::Improper {
        let tw = twist_matrix();
        members.extend(
            cycle_with(&q.act(&tw))?
                .into_iter()
                .map(|(f, u)| (f, &tw * &u)),
        );
    }
    members
        .into_iter()
        .min_by(|x, y| x.0.sort_key().cmp(&y.0.sort_key()))
        .ok_or_else(|| Error::Internal("empty cycle".into()))
}

/// A transformation `U` with `q1·U = q2`, if the forms are equivalent.
pub fn forms_equivalent(q1: &BQForm, q2: &BQForm, mode: EquivMode) -> Result<Option<IntMat2>> {
    let (d1, d2) = (q1.disc(), q2.disc());
    if d1 != d2 {
        return Err(Error::DiscriminantMismatch {
            left: d1,
            right: d2,
        });
    }
    let (r1, u1) = canonical_rep(q1, mode)?;
    let (r2, u2) = canonical_rep(q2, mode)?;
    if r1 != r2 {
        return Ok(None);
    }
    let w = &u1 * &mat_inv(&u2)?;
    if q1.act(&w) != *q2 {
        return Err(Error::Internal(format!(
            "equivalence witness for {q1} ~ {q2} failed"
        )));
    }
    Ok(Some(w))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormClassSet {
    #[serde(flatten)]
    pub disc: OrderDisc,
    pub mode: EquivMode,
    pub h: usize,
    pub reps: Vec<BQForm>,
    /// Reduced forms in each class, aligned with `reps`.
    #[serde(skip)]
    pub members: Vec<Vec<BQForm>>,
}

impl FormClassSet {
    pub fn class_number(&self) -> usize {
        self.reps.len()
    }

    /// Index of the class containing `q`.
    pub fn class_of(&self, q: &BQForm) -> Result<Option<usize>> {
        let (rep, _) = canonical_rep(q, self.mode)?;
        Ok(self.reps.iter().position(|r| *r == rep))
    }
}

fn small_disc(disc: &BigInt) -> Result<i128> {
    disc.to_i128()
        .filter(|d| d.unsigned_abs() < 1u128 << 100)
        .ok_or_else(|| Error::TooLarge {
            what: format!("discriminant {disc}"),
        })
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    a.gcd(&b)
}

fn reduced_definite_forms(disc: i128, exec: Exec) -> Vec<(i128, i128, i128)> {
    let amax = ((-disc) / 3).isqrt();
    let values: Vec<i64> = (1..=amax as i64).collect();
    let per_a = exec.map(&values, |&a| {
        let a = a as i128;
        let mut out = Vec::new();
        for b in (-a + 1)..=a {
            if (b - disc).rem_euclid(2) != 0 {
                continue;
            }
            let num = b * b - disc;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (c == a && b < 0) {
                continue;
            }
            if gcd_i128(gcd_i128(a, b), c) == 1 {
                out.push((a, b, c));
            }
        }
        out
    });
    per_a.into_iter().flatten().collect()
}

fn reduced_indefinite_forms(disc: i128, exec: Exec) -> Vec<(i128, i128, i128)> {
    let s = disc.isqrt();
    let bs: Vec<i64> = (1..=s as i64)
        .filter(|b| ((*b as i128) - disc).rem_euclid(2) == 0)
        .collect();
    let per_b = exec.map(&bs, |&b| {
        let b = b as i128;
        let n = (disc - b * b) / 4;
        let lo = ((s + 1 - b + 1) / 2).max(1);
        let hi = (s + b) / 2;
        let mut out = Vec::new();
        for a in lo..=hi {
            if n % a != 0 {
                continue;
            }
            let c = n / a;
            if gcd_i128(gcd_i128(a, b), c) == 1 {
                out.push((a, b, -c));
                out.push((-a, b, c));
            }
        }
        out
    });
    per_b.into_iter().flatten().collect()
}

/// One representative per class of primitive forms of discriminant `D`.
pub fn class_set(disc: &OrderDisc, mode: EquivMode) -> Result<FormClassSet> {
    class_set_with(disc, mode, Exec::default())
}

pub fn class_set_with(disc: &OrderDisc, mode: EquivMode, exec: Exec) -> Result<FormClassSet> {
    let d = small_disc(&disc.disc)?;
    let to_form = |(a, b, c): (i128, i128, i128)| BQForm::raw(a.into(), b.into(), c.into());
    let mut classes: Vec<Vec<BQForm>> = if d < 0 {
        reduced_definite_forms(d, exec)
            .into_iter()
            .map(|f| vec![to_form(f)])
            .collect()
    } else {
        let forms: Vec<BQForm> = reduced_indefinite_forms(d, exec)
            .into_iter()
            .map(to_form)
            .collect();
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        for f in forms {
            if seen.contains(&f) {
                continue;
            }
            let mut class = cycle(&f)?;
            if mode == EquivMode::Improper {
                let tw = f.twist();
                if !class.contains(&tw) {
                    class.extend(cycle(&tw)?);
                }
            }
            seen.extend(class.iter().cloned());
            out.push(class);
        }
        out
    };
    for class in &mut classes {
        class.sort_by_key(BQForm::sort_key);
    }
    classes.sort_by_key(|c| c[0].sort_key());
    let reps: Vec<BQForm> = classes.iter().map(|c| c[0].clone()).collect();
    Ok(FormClassSet {
        disc: disc.clone(),
        mode,
        h: reps.len(),
        reps,
        members: classes,
    })
}
