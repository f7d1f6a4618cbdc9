//! Exact integer helpers: square roots, square-free parts, trial-division
//! factoring, extended gcd and CRT.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Floor of the square root of a non-negative integer.
pub fn isqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "isqrt of negative number");
    n.sqrt()
}

/// Exact perfect-square test. Negative numbers are never squares.
pub fn is_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

pub fn gcd3(a: &BigInt, b: &BigInt, c: &BigInt) -> BigInt {
    a.gcd(b).gcd(c)
}

/// Returns `(g, x, y)` with `g = gcd(a, b) >= 0` and `a*x + b*y = g`.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = &old_r / &r;
        let nr = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, nr);
        let ns = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, ns);
        let nt = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, nt);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Prime factorization by trial division, as `(p, e)` pairs in increasing `p`.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Writes `m = s^2 * d` with `d` square-free, `s > 0` and `sign(d) = sign(m)`.
///
/// Trial division only; `|m|` must fit in 64 bits.
pub fn square_free_decompose(m: &BigInt) -> Result<(BigInt, BigInt)> {
    if m.is_zero() {
        return Err(Error::Zero);
    }
    let abs = m.abs().to_u64().ok_or_else(|| Error::TooLarge {
        what: format!("|{m}| (trial division limit 2^64)"),
    })?;
    let mut d = BigInt::one();
    let mut s = BigInt::one();
    for (p, e) in factor_u64(abs) {
        let p = BigInt::from(p);
        s *= num_traits::pow(p.clone(), (e / 2) as usize);
        if e % 2 == 1 {
            d *= p;
        }
    }
    if m.is_negative() {
        d = -d;
    }
    Ok((d, s))
}

/// Combines `x ≡ r1 (mod m1)` and `x ≡ r2 (mod m2)` for coprime moduli.
pub fn crt_pair(r1: u64, m1: u64, r2: u64, m2: u64) -> u64 {
    let (g, inv, _) = ext_gcd(&BigInt::from(m1), &BigInt::from(m2));
    debug_assert!(g.is_one(), "CRT moduli must be coprime");
    let m1b = BigInt::from(m1);
    let m = &m1b * BigInt::from(m2);
    // x = r1 + m1 * ((r2 - r1) * inv(m1) mod m2)
    let k = ((BigInt::from(r2) - BigInt::from(r1)) * inv).mod_floor(&BigInt::from(m2));
    let x = (BigInt::from(r1) + m1b * k).mod_floor(&m);
    x.to_u64().expect("CRT result fits the product modulus")
}
