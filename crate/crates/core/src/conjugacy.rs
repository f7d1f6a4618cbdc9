//! GL2(Z)-conjugacy of integer matrices.
//!
//! For `A = [[p, q], [r, s]]` the binary form `Q_A(v) = det[v, Av]` has
//! coefficients `(r, s - p, -q)` and discriminant `t^2 - 4n`. Conjugation
//! moves it by the twisted right action of [`crate::forms`]:
//!
//! ```text
//! Q_{U⁻¹AU} = Q_A · U
//! ```
//!
//! and `Q_A` together with the trace recovers `A`. So two matrices with the
//! same irreducible characteristic polynomial are conjugate exactly when
//! their forms are equivalent under determinant `±1` substitutions, and a form
//! transformation converts directly into a matrix conjugator.
//!
//! Every matrix gets a canonical form `T` together with `P` satisfying
//! `P·A = T·P`:
//!
//! * irreducible polynomial: the matrix whose form is the canonical
//!   representative of the class of `Q_A`;
//! * `D = 0`: `[[ε, k], [0, ε]]` with `ε = t/2` and `k ≥ 0` the content of `A - εI`;
//! * `D = 4` (trace 0, det -1): `[[0, 1], [1, 0]]` when `Q_A` is primitive,
//!   `diag(1, -1)` when `A ≡ I (mod 2)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{ext_gcd, gcd3};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::forms::{canonical_rep, BQForm, EquivMode};
use crate::matrix::{char_poly, mat_inv, IntMat2};

/// `P` with `P·A = B·P` and `det P = ±1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjugacyWitness {
    pub p: IntMat2,
}

impl ConjugacyWitness {
    pub fn verify(&self, a: &IntMat2, b: &IntMat2) -> bool {
        self.p.is_unimodular() && &self.p * a == b * &self.p
    }

    /// Witness for `B ~ A`.
    pub fn inverse(&self) -> Result<ConjugacyWitness> {
        Ok(ConjugacyWitness {
            p: mat_inv(&self.p)?,
        })
    }

    /// Given `self: A → B` and `next: B → C`, the witness `A → C`.
    pub fn then(&self, next: &ConjugacyWitness) -> ConjugacyWitness {
        ConjugacyWitness {
            p: &next.p * &self.p,
        }
    }
}

/// `Q_A = g · form` after the normalization `N`: `Q_A · N = g · form`.
struct FixedLine {
    form: BQForm,
    content: BigInt,
    normalizer: IntMat2,
}

fn fixed_line(a: &IntMat2) -> Result<FixedLine> {
    let raw = (a.c.clone(), &a.d - &a.a, -&a.b);
    let disc = &raw.1 * &raw.1 - BigInt::from(4) * &raw.0 * &raw.2;
    let p = crate::matrix::CharPoly::new(a.trace(), a.det());
    if !p.is_irreducible() {
        return Err(Error::DegenerateSpectrum { disc });
    }
    let g = gcd3(&raw.0, &raw.1, &raw.2);
    let (fa, fb, fc) = (&raw.0 / &g, &raw.1 / &g, &raw.2 / &g);
    let (form, normalizer) = if disc.is_negative() && fa.is_negative() {
        (
            BQForm::new(-fa, fb, -fc)?,
            IntMat2::from_rows([[1, 0], [0, -1]]),
        )
    } else {
        (BQForm::new(fa, fb, fc)?, IntMat2::identity())
    };
    Ok(FixedLine {
        form,
        content: g,
        normalizer,
    })
}

/// The primitive form proportional to `(r, s - p, -q)`, made positive when
/// definite.
pub fn matrix_to_form(a: &IntMat2) -> Result<BQForm> {
    fixed_line(a).map(|l| l.form)
}

/// The matrix with trace `t` whose form is `g · q`.
pub fn form_to_matrix(q: &BQForm, g: &BigInt, t: &BigInt) -> Result<IntMat2> {
    let gb = g * q.b();
    let two = BigInt::from(2);
    if !(t + &gb).is_multiple_of(&two) {
        return Err(Error::Internal(format!(
            "trace {t} incompatible with {g}·{q}"
        )));
    }
    Ok(IntMat2 {
        a: (t - &gb) / &two,
        b: -(g * q.c()),
        c: g * q.a(),
        d: (t + &gb) / &two,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CanonicalForm {
    pub target: IntMat2,
    /// `P` with `P·A = target·P`.
    pub conjugator: IntMat2,
}

impl CanonicalForm {
    pub fn witness(&self) -> ConjugacyWitness {
        ConjugacyWitness {
            p: self.conjugator.clone(),
        }
    }
}

/// Primitive generator of the kernel of a rank-one matrix.
fn primitive_kernel(m: &IntMat2) -> (BigInt, BigInt) {
    let (r1, r2) = if !m.a.is_zero() || !m.b.is_zero() {
        (&m.a, &m.b)
    } else {
        (&m.c, &m.d)
    };
    let g = r1.gcd(r2);
    (r2 / &g, -(r1 / &g))
}

fn canonical_irreducible(a: &IntMat2) -> Result<CanonicalForm> {
    let line = fixed_line(a)?;
    let (rep, v) = canonical_rep(&line.form, EquivMode::Improper)?;
    let u = &line.normalizer * &v;
    let p = mat_inv(&u)?;
    let target = form_to_matrix(&rep, &line.content, &a.trace())?;
    Ok(CanonicalForm {
        target,
        conjugator: p,
    })
}

fn canonical_unipotent(a: &IntMat2) -> CanonicalForm {
    let eps = a.trace() / BigInt::from(2);
    let nil = a.minus_scalar(&eps);
    let k = nil.a.gcd(&nil.b).gcd(&nil.c).gcd(&nil.d);
    if k.is_zero() {
        return CanonicalForm {
            target: a.clone(),
            conjugator: IntMat2::identity(),
        };
    }
    let v = primitive_kernel(&nil);
    let (_, x, y) = ext_gcd(&v.0, &v.1);
    let mut w = (-y, x);
    // nil·w = m·v with |m| = k; flip w when m < 0
    let nw = nil.apply(&w);
    let m = if !v.0.is_zero() {
        &nw.0 / &v.0
    } else {
        &nw.1 / &v.1
    };
    if m.is_negative() {
        w = (-w.0, -w.1);
    }
    let q = IntMat2::from_columns(v, w);
    let p = mat_inv(&q).expect("basis extension is unimodular");
    let target = IntMat2::new(eps.clone(), k, BigInt::zero(), eps);
    CanonicalForm {
        target,
        conjugator: p,
    }
}

fn canonical_involution(a: &IntMat2) -> Result<CanonicalForm> {
    let content = gcd3(&a.c, &(&a.d - &a.a), &a.b);
    let one = BigInt::one();
    let vp = primitive_kernel(&a.minus_scalar(&one));
    let vm = primitive_kernel(&a.minus_scalar(&-&one));
    let (q, target) = if content == BigInt::from(2) {
        (
            IntMat2::from_columns(vp, vm),
            IntMat2::from_rows([[1, 0], [0, -1]]),
        )
    } else {
        // Z v+ + Z v- has index 2, so (v+ + v-)/2 is integral and
        // det[x, Ax] = ±1
        let x = ((&vp.0 + &vm.0) / 2, (&vp.1 + &vm.1) / 2);
        let ax = a.apply(&x);
        (
            IntMat2::from_columns(x, ax),
            IntMat2::from_rows([[0, 1], [1, 0]]),
        )
    };
    let p = mat_inv(&q)?;
    Ok(CanonicalForm {
        target,
        conjugator: p,
    })
}

/// Canonical representative of the GL2(Z)-class of `A` with a conjugator.
pub fn canonical_form(a: &IntMat2) -> Result<CanonicalForm> {
    let p = char_poly(a)?;
    let disc = p.disc();
    let out = if p.is_irreducible() {
        canonical_irreducible(a)?
    } else if disc.is_zero() {
        canonical_unipotent(a)
    } else if disc == BigInt::from(4) {
        canonical_involution(a)?
    } else {
        return Err(Error::Internal(format!(
            "unexpected square discriminant {disc}"
        )));
    };
    if !out.witness().verify(a, &out.target) {
        return Err(Error::Internal(format!(
            "canonical conjugator for {a} failed verification"
        )));
    }
    Ok(out)
}

/// Decides conjugacy over GL2(Z), returning a verified witness `P·A = B·P`.
pub fn are_conjugate_gl2z(a: &IntMat2, b: &IntMat2) -> Result<Option<ConjugacyWitness>> {
    let (pa, pb) = (char_poly(a)?, char_poly(b)?);
    if pa != pb {
        return Ok(None);
    }
    let (ca, cb) = (canonical_form(a)?, canonical_form(b)?);
    if ca.target != cb.target {
        return Ok(None);
    }
    let w = ConjugacyWitness {
        p: &mat_inv(&cb.conjugator)? * &ca.conjugator,
    };
    if !w.verify(a, b) {
        return Err(Error::Internal(format!(
            "conjugator {} for {a} ~ {b} failed",
            w.p
        )));
    }
    Ok(Some(w))
}

/// Result of a bounded search. `NotFoundWithin` says nothing beyond the bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum BruteForce {
    Found { witness: ConjugacyWitness },
    NotFoundWithin { bound: u32 },
}

impl BruteForce {
    pub fn witness(&self) -> Option<&ConjugacyWitness> {
        match self {
            BruteForce::Found { witness } => Some(witness),
            BruteForce::NotFoundWithin { .. } => None,
        }
    }
}

const BRUTE_BOUND_MAX: u32 = 1 << 20;

fn small_entries(a: &IntMat2) -> Result<[i128; 4]> {
    let e = a.to_i64_rows().ok_or_else(|| Error::TooLarge {
        what: format!("matrix {a} for exhaustive search"),
    })?;
    Ok([e[0][0], e[0][1], e[1][0], e[1][1]].map(i128::from))
}

/// Exhaustive search for `P` with entries in `[-bound, bound]`, `det P = ±1`
/// and `P·A = B·P`; the first hit in lexicographic order of
/// `(p11, p12, p21, p22)` is returned.
pub fn brute_force_conjugator(
    a: &IntMat2,
    b: &IntMat2,
    bound: u32,
    exec: Exec,
) -> Result<BruteForce> {
    char_poly(a)?;
    char_poly(b)?;
    if bound > BRUTE_BOUND_MAX {
        return Err(Error::TooLarge {
            what: format!("search bound {bound}"),
        });
    }
    let [a1, a2, a3, a4] = small_entries(a)?;
    let [b1, b2, b3, b4] = small_entries(b)?;
    let bd = bound as i128;
    let in_range = |v: i128| -bd <= v && v <= bd;
    let accept = |x: i128, y: i128, z: i128, w: i128| {
        z * (a1 - b4) + w * a3 - b3 * x == 0
            && z * a2 + w * (a4 - b4) - b3 * y == 0
            && (x * w - y * z).abs() == 1
    };
    let hit = exec.find_map_first(-(bound as i64)..bound as i64 + 1, |x| {
        let x = x as i128;
        for y in -bd..=bd {
            let e1 = x * (a1 - b1) + y * a3;
            let e2 = x * a2 + y * (a4 - b1);
            if b2 != 0 {
                if e1 % b2 != 0 || e2 % b2 != 0 {
                    continue;
                }
                let (z, w) = (e1 / b2, e2 / b2);
                if in_range(z) && in_range(w) && accept(x, y, z, w) {
                    return Some([x, y, z, w]);
                }
                continue;
            }
            if e1 != 0 || e2 != 0 {
                continue;
            }
            for z in -bd..=bd {
                if a3 != 0 {
                    let num = b3 * x - z * (a1 - b4);
                    if num % a3 == 0 {
                        let w = num / a3;
                        if in_range(w) && accept(x, y, z, w) {
                            return Some([x, y, z, w]);
                        }
                    }
                    continue;
                }
                for w in -bd..=bd {
                    if accept(x, y, z, w) {
                        return Some([x, y, z, w]);
                    }
                }
            }
        }
        None
    });
    Ok(match hit {
        Some([x, y, z, w]) => {
            let witness = ConjugacyWitness {
                p: IntMat2::new(x, y, z, w),
            };
            if !witness.verify(a, b) {
                return Err(Error::Internal(format!(
                    "brute-force witness {} failed",
                    witness.p
                )));
            }
            BruteForce::Found { witness }
        }
        None => BruteForce::NotFoundWithin { bound },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: [[i64; 2]; 2]) -> IntMat2 {
        IntMat2::from_rows(rows)
    }

    fn q(a: i64, b: i64, c: i64) -> BQForm {
        BQForm::new(a, b, c).unwrap()
    }

    #[test]
    fn matrix_to_form_examples() {
        assert_eq!(matrix_to_form(&m([[0, -1], [1, 3]])).unwrap(), q(1, 3, 1));
        assert_eq!(matrix_to_form(&m([[0, 1], [1, 6]])).unwrap(), q(1, 6, -1));
        assert_eq!(matrix_to_form(&m([[0, -1], [1, 0]])).unwrap(), q(1, 0, 1));
        assert_eq!(matrix_to_form(&m([[0, 1], [-1, 0]])).unwrap(), q(1, 0, 1));
        assert!(matches!(
            matrix_to_form(&m([[1, 1], [0, 1]])),
            Err(Error::DegenerateSpectrum { .. })
        ));
    }

    #[test]
    fn conjugacy_examples() {
        let a = m([[2, 1], [1, 1]]);
        let w = are_conjugate_gl2z(&a, &a).unwrap().unwrap();
        assert!(w.verify(&a, &a));

        let r = m([[0, -1], [1, 0]]);
        let r_inv = m([[0, 1], [-1, 0]]);
        assert!(are_conjugate_gl2z(&r, &r_inv)
            .unwrap()
            .unwrap()
            .verify(&r, &r_inv));

        let c = m([[0, 1], [1, 6]]);
        let d = m([[4, 3], [3, 2]]);
        assert_eq!(are_conjugate_gl2z(&c, &d).unwrap(), None);
        assert_eq!(
            are_conjugate_gl2z(&m([[0, -1], [1, 3]]), &m([[0, -1], [1, 4]])).unwrap(),
            None
        );
    }

    #[test]
    fn brute_force_examples() {
        let a = m([[0, -1], [1, 3]]);
        let found = brute_force_conjugator(&a, &a, 1, Exec::Sequential).unwrap();
        assert!(found.witness().unwrap().verify(&a, &a));

        let planted = m([[2, 1], [1, 1]]);
        let b = &(&planted * &a) * &mat_inv(&planted).unwrap();
        let found = brute_force_conjugator(&a, &b, 5, Exec::Parallel).unwrap();
        assert!(found.witness().unwrap().verify(&a, &b));

        let c = m([[0, 1], [1, 6]]);
        let d = m([[4, 3], [3, 2]]);
        assert_eq!(
            brute_force_conjugator(&c, &d, 50, Exec::Parallel).unwrap(),
            BruteForce::NotFoundWithin { bound: 50 }
        );
    }

    #[test]
    fn brute_force_strategies_agree() {
        let a = m([[0, -1], [1, 3]]);
        let b = m([[3, -1], [1, 0]]);
        let s = brute_force_conjugator(&a, &b, 6, Exec::Sequential).unwrap();
        let p = brute_force_conjugator(&a, &b, 6, Exec::Parallel).unwrap();
        assert_eq!(s, p);
    }

    #[test]
    fn degenerate_canonical_forms() {
        for (mat, target) in [
            (m([[1, 0], [0, 1]]), m([[1, 0], [0, 1]])),
            (m([[1, 1], [0, 1]]), m([[1, 1], [0, 1]])),
            (m([[1, 0], [5, 1]]), m([[1, 5], [0, 1]])),
            (m([[1, 0], [-5, 1]]), m([[1, 5], [0, 1]])),
            (m([[-1, 3], [0, -1]]), m([[-1, 3], [0, -1]])),
            (m([[3, -2], [2, -1]]), m([[1, 2], [0, 1]])),
            (m([[0, 1], [1, 0]]), m([[0, 1], [1, 0]])),
            (m([[1, 0], [0, -1]]), m([[1, 0], [0, -1]])),
            (m([[1, 1], [0, -1]]), m([[0, 1], [1, 0]])),
            (m([[3, 4], [-2, -3]]), m([[1, 0], [0, -1]])),
        ] {
            let c = canonical_form(&mat).unwrap();
            assert_eq!(c.target, target, "{mat}");
            assert!(c.witness().verify(&mat, &target));
        }
        let swap = m([[0, 1], [1, 0]]);
        let diag = m([[1, 0], [0, -1]]);
        assert_eq!(are_conjugate_gl2z(&swap, &diag).unwrap(), None);
        assert_eq!(
            brute_force_conjugator(&swap, &diag, 20, Exec::Sequential).unwrap(),
            BruteForce::NotFoundWithin { bound: 20 }
        );
    }

    #[test]
    fn irreducible_canonical_target_has_the_polynomial() {
        for mat in [
            m([[0, 1], [1, 6]]),
            m([[4, 3], [3, 2]]),
            m([[5, 2], [2, 1]]),
            m([[0, -1], [1, 1]]),
        ] {
            let c = canonical_form(&mat).unwrap();
            assert_eq!(char_poly(&c.target).unwrap(), char_poly(&mat).unwrap());
        }
        // companion of x^2 - 6x - 1 is its own canonical form
        let comp = m([[0, 1], [1, 6]]);
        assert_eq!(canonical_form(&comp).unwrap().target, comp);
    }

    fn unimodular() -> impl Strategy<Value = IntMat2> {
        prop::sample::select(crate::matrix::gl2_box(5))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn conjugates_are_detected(a in unimodular(), p in unimodular()) {
            let b = &(&p * &a) * &mat_inv(&p).unwrap();
            let w = are_conjugate_gl2z(&a, &b).unwrap();
            prop_assert!(w.as_ref().is_some_and(|w| w.verify(&a, &b)));
            let back = are_conjugate_gl2z(&b, &a).unwrap().unwrap();
            prop_assert!(back.verify(&b, &a));
            prop_assert!(w.unwrap().inverse().unwrap().verify(&b, &a));
        }

        #[test]
        fn transitivity(a in unimodular(), p in unimodular(), r in unimodular()) {
            let b = &(&p * &a) * &mat_inv(&p).unwrap();
            let c = &(&r * &b) * &mat_inv(&r).unwrap();
            let ab = are_conjugate_gl2z(&a, &b).unwrap().unwrap();
            let bc = are_conjugate_gl2z(&b, &c).unwrap().unwrap();
            prop_assert!(ab.then(&bc).verify(&a, &c));
        }

        #[test]
        fn canonical_form_is_a_class_invariant(a in unimodular(), p in unimodular()) {
            let b = &(&p * &a) * &mat_inv(&p).unwrap();
            prop_assert_eq!(canonical_form(&a).unwrap().target, canonical_form(&b).unwrap().target);
        }
    }
}
