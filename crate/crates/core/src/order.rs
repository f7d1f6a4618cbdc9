//! Quadratic orders attached to a characteristic polynomial.
//!
//! For `p = x^2 - t x + n` with non-square discriminant `D = t^2 - 4n`, the
//! eigenvalue `λ = (t + √D)/2` generates the order `Z[λ]` of discriminant `D`
//! inside `K = Q(√D)`. Writing `D = f^2 · D0` with `D0` fundamental, `f` is
//! the conductor: the index of `Z[λ]` in the maximal order `O_K`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{is_square, square_free_decompose};
use crate::error::{Error, Result};
use crate::matrix::CharPoly;

/// `D = conductor^2 · fundamental`, with `fundamental = s^2·d` for the
/// square-free kernel `d` (`s ∈ {1, 2}`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct OrderDisc {
    #[serde(rename = "D", serialize_with = "crate::json::int")]
    pub disc: BigInt,
    #[serde(rename = "D0", serialize_with = "crate::json::int")]
    pub fundamental: BigInt,
    #[serde(rename = "f", serialize_with = "crate::json::int")]
    pub conductor: BigInt,
    #[serde(rename = "d", serialize_with = "crate::json::int")]
    pub squarefree: BigInt,
}

impl OrderDisc {
    /// Decomposes a discriminant: nonzero, non-square, `≡ 0, 1 (mod 4)`.
    pub fn from_disc(disc: &BigInt) -> Result<Self> {
        let four = BigInt::from(4);
        let r = disc.mod_floor(&four);
        if disc.is_zero() || is_square(disc) || !(r.is_zero() || r.is_one()) {
            return Err(Error::InvalidDiscriminant { disc: disc.clone() });
        }
        let (d, s) = square_free_decompose(disc)?;
        let (fundamental, conductor) = if d.mod_floor(&four).is_one() {
            (d.clone(), s)
        } else {
            debug_assert!(s.is_even());
            (&d * &four, s / 2)
        };
        Ok(OrderDisc {
            disc: disc.clone(),
            fundamental,
            conductor,
            squarefree: d,
        })
    }

    pub fn is_maximal(&self) -> bool {
        self.conductor.is_one()
    }

    pub fn is_definite(&self) -> bool {
        self.disc.is_negative()
    }

    /// Discriminant of the maximal order.
    pub fn field(&self) -> OrderDisc {
        OrderDisc {
            disc: self.fundamental.clone(),
            fundamental: self.fundamental.clone(),
            conductor: BigInt::one(),
            squarefree: self.squarefree.clone(),
        }
    }

    /// Discriminants `D / g^2` of every order containing this one, for `g | f`,
    /// ordered from this order up to the maximal one.
    pub fn overorders(&self) -> Vec<OrderDisc> {
        let f = &self.conductor;
        let mut out = Vec::new();
        let mut g = BigInt::one();
        while &g <= f {
            if f.is_multiple_of(&g) {
                let h = f / &g;
                out.push(OrderDisc {
                    disc: &self.fundamental * &h * &h,
                    fundamental: self.fundamental.clone(),
                    conductor: h,
                    squarefree: self.squarefree.clone(),
                });
            }
            g += 1;
        }
        out
    }
}

pub fn order_disc(p: &CharPoly) -> Result<OrderDisc> {
    let disc = p.disc();
    if disc.is_zero() || is_square(&disc) {
        return Err(Error::DegenerateSpectrum { disc });
    }
    OrderDisc::from_disc(&disc)
}

/// The algebraic integer `(x2 + y2·√D0) / 2` of `O_K`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadElement {
    x2: BigInt,
    y2: BigInt,
    fundamental: BigInt,
    squarefree: BigInt,
}

impl QuadElement {
    /// Returns `None` when the coordinates do not describe an integer of `O_K`.
    pub fn new(x2: BigInt, y2: BigInt, field: &OrderDisc) -> Option<Self> {
        let ok = if field.fundamental.is_odd() {
            (&x2 - &y2).is_even()
        } else {
            x2.is_even()
        };
        ok.then(|| QuadElement {
            x2,
            y2,
            fundamental: field.fundamental.clone(),
            squarefree: field.squarefree.clone(),
        })
    }

    /// Twice the rational part.
    pub fn x2(&self) -> &BigInt {
        &self.x2
    }

    /// Twice the coefficient of `√D0`.
    pub fn y2(&self) -> &BigInt {
        &self.y2
    }

    pub fn trace(&self) -> BigInt {
        self.x2.clone()
    }

    pub fn norm(&self) -> BigInt {
        (&self.x2 * &self.x2 - &self.y2 * &self.y2 * &self.fundamental) / 4
    }

    pub fn conjugate(&self) -> Self {
        QuadElement {
            y2: -&self.y2,
            ..self.clone()
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        debug_assert_eq!(self.fundamental, o.fundamental);
        let x2 = (&self.x2 * &o.x2 + &self.y2 * &o.y2 * &self.fundamental) / 2;
        let y2 = (&self.x2 * &o.y2 + &o.x2 * &self.y2) / 2;
        QuadElement {
            x2,
            y2,
            ..self.clone()
        }
    }

    /// Coordinates in the maximal-order basis `(1, ω)`, `ω = (D0 + √D0)/2`.
    pub fn omega_coords(&self) -> (BigInt, BigInt) {
        (
            (&self.x2 - &self.y2 * &self.fundamental) / 2,
            self.y2.clone(),
        )
    }

    pub fn is_plus_minus_one(&self) -> bool {
        self.y2.is_zero() && self.x2.abs() == BigInt::from(2)
    }
}

impl fmt::Display for QuadElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // y√D0 = y·s·√d with D0 = s^2 d
        let s = if self.fundamental == self.squarefree {
            BigInt::one()
        } else {
            BigInt::from(2)
        };
        let rad_coeff = &self.y2 * s;
        let (num_x, num_y, den) = if self.x2.is_even() && rad_coeff.is_even() {
            (&self.x2 / 2, rad_coeff / 2, 1)
        } else {
            (self.x2.clone(), rad_coeff, 2)
        };
        let mut body = String::new();
        if !num_x.is_zero() {
            body.push_str(&num_x.to_string());
        }
        if !num_y.is_zero() {
            let mag = num_y.abs();
            let coeff = if mag.is_one() {
                String::new()
            } else {
                mag.to_string()
            };
            let sign = if num_y.is_negative() { "-" } else { "+" };
            if body.is_empty() {
                if num_y.is_negative() {
                    body.push('-');
                }
            } else {
                body.push_str(&format!(" {sign} "));
            }
            body.push_str(&format!("{coeff}√{}", self.squarefree));
        }
        if body.is_empty() {
            body.push('0');
        }
        if den == 1 {
            f.write_str(&body)
        } else if num_x.is_zero() || num_y.is_zero() {
            write!(f, "{body}/2")
        } else {
            write!(f, "({body})/2")
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitElement {
    pub value: QuadElement,
    pub norm: BigInt,
}

impl UnitElement {
    pub fn inverse(&self) -> QuadElement {
        // u^{-1} = conj(u) / N(u), and N(u) = ±1
        let c = self.value.conjugate();
        if self.norm.is_one() {
            c
        } else {
            QuadElement {
                x2: -c.x2,
                y2: -c.y2,
                ..c
            }
        }
    }
}

/// The eigenvalue `λ = (t + √D)/2` as a unit of `O_K`.
pub fn eigenvalue_unit(p: &CharPoly) -> Result<UnitElement> {
    let od = order_disc(p)?;
    if !p.n.abs().is_one() {
        return Err(Error::NotUnimodular { det: p.n.clone() });
    }
    let value = QuadElement::new(p.t.clone(), od.conductor.clone(), &od)
        .ok_or_else(|| Error::Internal(format!("eigenvalue of {p} is not integral")))?;
    debug_assert!(!value.is_plus_minus_one());
    let norm = value.norm();
    debug_assert_eq!(norm, p.n);
    Ok(UnitElement { value, norm })
}

/// Index of `S = Z[λ, λ⁻¹]` in `O_K`, computed as the index of the lattice
/// spanned by `1, λ, λ⁻¹` in ω-coordinates (gcd of its 2×2 minors).
pub fn subring_index(p: &CharPoly) -> Result<BigInt> {
    let unit = eigenvalue_unit(p)?;
    let od = order_disc(p)?;
    let one = QuadElement::new(BigInt::from(2), BigInt::zero(), &od).expect("1 is integral");
    let gens = [one, unit.value.clone(), unit.inverse()];
    let coords: Vec<(BigInt, BigInt)> = gens.iter().map(QuadElement::omega_coords).collect();
    let mut g = BigInt::zero();
    for i in 0..coords.len() {
        for j in i + 1..coords.len() {
            let (a, b) = (&coords[i], &coords[j]);
            g = g.gcd(&(&a.0 * &b.1 - &a.1 * &b.0));
        }
    }
    if g.is_zero() {
        return Err(Error::Internal("Z[λ, λ⁻¹] has rank < 2".into()));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(t: i64, n: i64) -> CharPoly {
        CharPoly::new(t, n)
    }

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn order_disc_examples() {
        let od = order_disc(&p(3, 1)).unwrap();
        assert_eq!((od.disc, od.fundamental, od.conductor), (b(5), b(5), b(1)));
        let od = order_disc(&p(6, -1)).unwrap();
        assert_eq!(
            (od.disc, od.fundamental, od.conductor),
            (b(40), b(40), b(1))
        );
        let od = order_disc(&p(7, 1)).unwrap();
        assert_eq!((od.disc, od.fundamental, od.conductor), (b(45), b(5), b(3)));
        assert!(matches!(
            order_disc(&p(2, 1)),
            Err(Error::DegenerateSpectrum { .. })
        ));
        assert!(matches!(
            order_disc(&p(0, -1)),
            Err(Error::DegenerateSpectrum { .. })
        ));
    }

    #[test]
    fn from_disc_validates() {
        assert!(OrderDisc::from_disc(&b(12)).is_ok());
        assert!(OrderDisc::from_disc(&b(-3)).is_ok());
        assert!(OrderDisc::from_disc(&b(7)).is_err());
        assert!(OrderDisc::from_disc(&b(9)).is_err());
        assert!(OrderDisc::from_disc(&b(0)).is_err());
        let od = OrderDisc::from_disc(&b(-16)).unwrap();
        assert_eq!((od.fundamental, od.conductor), (b(-4), b(2)));
        let od = OrderDisc::from_disc(&b(12)).unwrap();
        assert_eq!(
            (od.fundamental, od.conductor, od.squarefree),
            (b(12), b(1), b(3))
        );
    }

    #[test]
    fn overorders_of_45() {
        let od = OrderDisc::from_disc(&b(45)).unwrap();
        let ds: Vec<BigInt> = od.overorders().into_iter().map(|o| o.disc).collect();
        assert_eq!(ds, vec![b(45), b(5)]);
        let od = OrderDisc::from_disc(&b(-144)).unwrap();
        let ds: Vec<BigInt> = od.overorders().into_iter().map(|o| o.disc).collect();
        assert_eq!(ds, vec![b(-144), b(-36), b(-16), b(-4)]);
    }

    #[test]
    fn eigenvalue_unit_examples() {
        let u = eigenvalue_unit(&p(6, -1)).unwrap();
        assert_eq!(u.norm, b(-1));
        assert_eq!(u.value.to_string(), "3 + √10");
        let u = eigenvalue_unit(&p(1, 1)).unwrap();
        assert_eq!(u.norm, b(1));
        assert_eq!(u.value.to_string(), "(1 + √-3)/2");
        let u = eigenvalue_unit(&p(3, 1)).unwrap();
        assert_eq!(u.value.to_string(), "(3 + √5)/2");
        assert_eq!(u.value.mul(&u.inverse()).to_string(), "1");
    }

    #[test]
    fn subring_index_examples() {
        assert_eq!(subring_index(&p(6, -1)).unwrap(), b(1));
        assert_eq!(subring_index(&p(7, 1)).unwrap(), b(3));
        assert_eq!(subring_index(&p(3, 1)).unwrap(), b(1));
    }

    #[test]
    fn index_equals_conductor_and_unit_recovers_polynomial() {
        for t in -30i64..=30 {
            for n in [-1i64, 1] {
                let poly = p(t, n);
                let disc = poly.disc();
                if disc.is_zero() || is_square(&disc) {
                    continue;
                }
                let od = order_disc(&poly).unwrap();
                assert_eq!(subring_index(&poly).unwrap(), od.conductor, "t={t} n={n}");
                let u = eigenvalue_unit(&poly).unwrap();
                assert_eq!(u.value.norm(), b(n));
                assert_eq!(u.value.trace(), b(t));
                assert_eq!(&od.conductor * &od.conductor * &od.fundamental, od.disc);
            }
        }
    }
}
