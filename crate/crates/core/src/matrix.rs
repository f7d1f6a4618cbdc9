//! Exact 2×2 integer matrices, characteristic polynomials and the geometry
//! of the torus bundle `M_A` built from a monodromy `A ∈ GL2(Z)`.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::arith::is_square;
use crate::error::{Error, Result};
use crate::json::JsonInt;

/// The matrix `[[a, b], [c, d]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMat2 {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl IntMat2 {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Self {
        IntMat2 {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        }
    }

    pub fn from_rows(rows: [[i64; 2]; 2]) -> Self {
        Self::new(rows[0][0], rows[0][1], rows[1][0], rows[1][1])
    }

    pub fn identity() -> Self {
        Self::new(1, 0, 0, 1)
    }

    pub fn scalar(s: impl Into<BigInt>) -> Self {
        let s = s.into();
        IntMat2 {
            a: s.clone(),
            b: BigInt::zero(),
            c: BigInt::zero(),
            d: s,
        }
    }

    /// Matrix whose columns are `u` and `v`.
    pub fn from_columns(u: (BigInt, BigInt), v: (BigInt, BigInt)) -> Self {
        IntMat2 {
            a: u.0,
            b: v.0,
            c: u.1,
            d: v.1,
        }
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs().is_one()
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.b.is_zero() && self.c.is_zero() && self.d.is_one()
    }

    pub fn adjugate(&self) -> Self {
        IntMat2 {
            a: self.d.clone(),
            b: -&self.b,
            c: -&self.c,
            d: self.a.clone(),
        }
    }

    pub fn apply(&self, v: &(BigInt, BigInt)) -> (BigInt, BigInt) {
        (
            &self.a * &v.0 + &self.b * &v.1,
            &self.c * &v.0 + &self.d * &v.1,
        )
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::identity();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `self - s·I`.
    pub fn minus_scalar(&self, s: &BigInt) -> Self {
        IntMat2 {
            a: &self.a - s,
            b: self.b.clone(),
            c: self.c.clone(),
            d: &self.d - s,
        }
    }

    pub fn to_i64_rows(&self) -> Option<[[i64; 2]; 2]> {
        use num_traits::ToPrimitive;
        Some([
            [self.a.to_i64()?, self.b.to_i64()?],
            [self.c.to_i64()?, self.d.to_i64()?],
        ])
    }
}

impl Mul for &IntMat2 {
    type Output = IntMat2;

    fn mul(self, o: &IntMat2) -> IntMat2 {
        IntMat2 {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }
}

impl fmt::Display for IntMat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::format_matrix(self))
    }
}

impl Serialize for IntMat2 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [
            [JsonInt(&self.a), JsonInt(&self.b)],
            [JsonInt(&self.c), JsonInt(&self.d)],
        ]
        .serialize(s)
    }
}

pub fn mat_mul(a: &IntMat2, b: &IntMat2) -> IntMat2 {
    a * b
}

/// Exact inverse of a unimodular matrix.
pub fn mat_inv(a: &IntMat2) -> Result<IntMat2> {
    let det = a.det();
    if !det.abs().is_one() {
        return Err(Error::NotUnimodular { det });
    }
    let adj = a.adjugate();
    // det is ±1, so dividing by it is multiplying by it
    Ok(IntMat2 {
        a: &adj.a * &det,
        b: &adj.b * &det,
        c: &adj.c * &det,
        d: &adj.d * &det,
    })
}

fn require_unimodular(a: &IntMat2) -> Result<()> {
    let det = a.det();
    if det.abs().is_one() {
        Ok(())
    } else {
        Err(Error::NotUnimodular { det })
    }
}

/// `x^2 - t·x + n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CharPoly {
    #[serde(serialize_with = "crate::json::int")]
    pub t: BigInt,
    #[serde(serialize_with = "crate::json::int")]
    pub n: BigInt,
}

impl CharPoly {
    pub fn new(t: impl Into<BigInt>, n: impl Into<BigInt>) -> Self {
        CharPoly {
            t: t.into(),
            n: n.into(),
        }
    }

    pub fn disc(&self) -> BigInt {
        &self.t * &self.t - BigInt::from(4) * &self.n
    }

    /// Irreducible over Q: the discriminant is not a square (zero included).
    pub fn is_irreducible(&self) -> bool {
        !is_square(&self.disc())
    }

    /// `[[0, -n], [1, t]]`.
    pub fn companion(&self) -> IntMat2 {
        IntMat2::new(BigInt::zero(), -&self.n, BigInt::one(), self.t.clone())
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^2")?;
        if !self.t.is_zero() {
            let sign = if self.t.is_positive() { '-' } else { '+' };
            if self.t.abs().is_one() {
                write!(f, " {sign} x")?;
            } else {
                write!(f, " {sign} {}x", self.t.abs())?;
            }
        }
        if !self.n.is_zero() {
            let sign = if self.n.is_negative() { '-' } else { '+' };
            write!(f, " {sign} {}", self.n.abs())?;
        }
        Ok(())
    }
}

pub fn char_poly(a: &IntMat2) -> Result<CharPoly> {
    require_unimodular(a)?;
    Ok(CharPoly {
        t: a.trace(),
        n: a.det(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SpectrumClass {
    /// `D > 0` and not a square.
    RealQuadratic,
    /// `D = 4`: eigenvalues `+1` and `-1`.
    SplitRational,
    /// `D = 0`, `t = 2`.
    RepeatedOne,
    /// `D = 0`, `t = -2`.
    RepeatedMinusOne,
    /// `D < 0`.
    ComplexQuadratic,
}

pub fn spectrum_class(p: &CharPoly) -> Result<SpectrumClass> {
    if !p.n.abs().is_one() {
        return Err(Error::NotUnimodular { det: p.n.clone() });
    }
    let disc = p.disc();
    Ok(if disc.is_negative() {
        SpectrumClass::ComplexQuadratic
    } else if disc.is_zero() {
        if p.t.is_positive() {
            SpectrumClass::RepeatedOne
        } else {
            SpectrumClass::RepeatedMinusOne
        }
    } else if is_square(&disc) {
        // with n = ±1 the only positive square discriminant is 4
        debug_assert_eq!(disc, BigInt::from(4));
        SpectrumClass::SplitRational
    } else {
        SpectrumClass::RealQuadratic
    })
}

/// No eigenvalue of absolute value 1.
pub fn is_hyperbolic(a: &IntMat2) -> Result<bool> {
    let p = char_poly(a)?;
    let t_abs = p.t.abs();
    let two = BigInt::from(2);
    Ok(t_abs > two || (p.n.is_negative() && !p.t.is_zero()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MatrixOrder {
    Finite(u32),
    Infinite,
}

/// Finite orders in GL2(Z) are 1, 2, 3, 4 or 6, so scanning powers up to 12
/// decides finiteness.
pub fn matrix_order(a: &IntMat2) -> Result<MatrixOrder> {
    require_unimodular(a)?;
    let mut acc = a.clone();
    for k in 1..=12u32 {
        if acc.is_identity() {
            return Ok(MatrixOrder::Finite(k));
        }
        acc = &acc * a;
    }
    Ok(MatrixOrder::Infinite)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GeometryLabel {
    Sol,
    Nil,
    Euclidean,
}

impl fmt::Display for GeometryLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GeometryLabel::Sol => "Sol",
            GeometryLabel::Nil => "Nil",
            GeometryLabel::Euclidean => "Euclidean",
        })
    }
}

/// Sol for hyperbolic monodromy, Euclidean for finite order, Nil otherwise.
pub fn geometry(a: &IntMat2) -> Result<GeometryLabel> {
    if is_hyperbolic(a)? {
        return Ok(GeometryLabel::Sol);
    }
    Ok(match matrix_order(a)? {
        MatrixOrder::Finite(_) => GeometryLabel::Euclidean,
        MatrixOrder::Infinite => GeometryLabel::Nil,
    })
}

/// All matrices with entries in `[-bound, bound]` and determinant `±1`.
#[cfg(test)]
pub(crate) fn gl2_box(bound: i64) -> Vec<IntMat2> {
    let r = -bound..=bound;
    let mut out = Vec::new();
    for a in r.clone() {
        for b in r.clone() {
            for c in r.clone() {
                for d in r.clone() {
                    if (a * d - b * c).abs() == 1 {
                        out.push(IntMat2::from_rows([[a, b], [c, d]]));
                    }
                }
            }
        }
    }
    out
}
