//! Profinite genus of `G_A = (Z × Z) ⋊_A Z` following the case split of
//! the main theorem.
//!
//! * trace 0: `A` is conjugate to a fixed finite-order matrix, genus 1;
//! * both eigenvalues `1` or both `-1`: genus 1;
//! * otherwise `λ` generates a quadratic field `K` and the genus is `h(K)`,
//!   the wide class number of the maximal order. The report also carries
//!   the class number of `Z[λ]` itself, which counts the Latimer–MacDuffee
//!   representatives, and flags the two whenever they differ.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::conjugacy::{
    are_conjugate_gl2z, brute_force_conjugator, canonical_form, BruteForce, CanonicalForm,
};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::forms::{class_set_with, EquivMode};
use crate::latimer::lm_representatives_with;
use crate::matrix::{char_poly, geometry, CharPoly, GeometryLabel, IntMat2};
use crate::modular::{profinite_evidence_with, ProfiniteEvidence};
use crate::order::OrderDisc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TheoremBranch {
    MainQuadratic,
    RepeatedOne,
    RepeatedMinusOne,
    TraceZero,
}

impl fmt::Display for TheoremBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TheoremBranch::MainQuadratic => "MainQuadratic",
            TheoremBranch::RepeatedOne => "RepeatedOne",
            TheoremBranch::RepeatedMinusOne => "RepeatedMinusOne",
            TheoremBranch::TraceZero => "TraceZero",
        })
    }
}

pub fn theorem_branch(p: &CharPoly) -> Result<TheoremBranch> {
    if !p.n.abs().is_one() {
        return Err(Error::NotUnimodular { det: p.n.clone() });
    }
    let disc = p.disc();
    Ok(if p.t.is_zero() {
        TheoremBranch::TraceZero
    } else if disc.is_zero() {
        if p.t.is_positive() {
            TheoremBranch::RepeatedOne
        } else {
            TheoremBranch::RepeatedMinusOne
        }
    } else {
        // n = ±1 and t ≠ 0 leave no square discriminant besides 0
        TheoremBranch::MainQuadratic
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EvidenceLevel {
    None,
    #[default]
    Fast,
    Full,
}

pub const FULL_BRUTE_BOUND: u32 = 50;
pub const FULL_MODULUS_MAX: u64 = 30;

/// Evidence about representatives `i < j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairEvidence {
    pub i: usize,
    pub j: usize,
    /// The forms-based decision, which is exact.
    pub conjugate_z: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub brute_force: Option<BruteForce>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modular: Option<ProfiniteEvidence>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Evidence {
    pub level: EvidenceLevel,
    pub pairs: Vec<PairEvidence>,
}

impl Evidence {
    /// No two representatives are conjugate over Z, and (with full evidence)
    /// every pair is conjugate modulo every `m` tested.
    pub fn supports_genus(&self) -> bool {
        self.pairs.iter().all(|p| {
            !p.conjugate_z
                && p.brute_force.as_ref().is_none_or(|b| b.witness().is_none())
                && p.modular.as_ref().is_none_or(|m| m.all_witnessed())
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenusReport {
    pub matrix: IntMat2,
    pub char_poly: CharPoly,
    pub geometry: GeometryLabel,
    pub branch: TheoremBranch,
    #[serde(rename = "D", serialize_with = "crate::json::int")]
    pub disc: BigInt,
    #[serde(rename = "D0", serialize_with = "crate::json::opt_int")]
    pub fundamental: Option<BigInt>,
    #[serde(serialize_with = "crate::json::opt_int")]
    pub conductor: Option<BigInt>,
    #[serde(serialize_with = "crate::json::opt_int")]
    pub d: Option<BigInt>,
    pub h_field: usize,
    pub h_order: Option<usize>,
    pub genus: usize,
    pub rigid: bool,
    pub discrepancy: bool,
    pub representatives: Vec<IntMat2>,
    /// Index of the representative conjugate to the input, when the input's
    /// class is among them.
    pub class_index: Option<usize>,
    pub canonical: CanonicalForm,
    pub evidence: Option<Evidence>,
    pub presentation: String,
}

fn superscript(e: &BigInt) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    let mut out = String::new();
    if e.is_negative() {
        out.push('⁻');
    }
    for ch in e.abs().to_string().chars() {
        out.push(DIGITS[ch.to_digit(10).expect("decimal digit") as usize]);
    }
    out
}

fn word(ex: &BigInt, ey: &BigInt) -> String {
    let mut out = String::new();
    for (g, e) in [("x", ex), ("y", ey)] {
        if e.is_zero() {
            continue;
        }
        out.push_str(g);
        if !e.is_one() {
            out.push_str(&superscript(e));
        }
    }
    if out.is_empty() {
        out.push('1');
    }
    out
}

/// `⟨x,y,t | [x,y]=1, txt⁻¹=x^a y^c, tyt⁻¹=x^b y^d⟩` for `A = [[a, b], [c, d]]`.
pub fn presentation(a: &IntMat2) -> Result<String> {
    char_poly(a)?;
    Ok(format!(
        "⟨x,y,t | [x,y]=1, txt⁻¹={}, tyt⁻¹={}⟩",
        word(&a.a, &a.c),
        word(&a.b, &a.d)
    ))
}

fn wide_class_number(disc: &OrderDisc, exec: Exec) -> Result<usize> {
    Ok(class_set_with(disc, EquivMode::Improper, exec)?.class_number())
}

fn pair_evidence(reps: &[IntMat2], level: EvidenceLevel, exec: Exec) -> Result<Vec<PairEvidence>> {
    let mut pairs = Vec::new();
    for i in 0..reps.len() {
        for j in i + 1..reps.len() {
            let conjugate_z = are_conjugate_gl2z(&reps[i], &reps[j])?.is_some();
            let (brute_force, modular) = if level == EvidenceLevel::Full {
                (
                    Some(brute_force_conjugator(
                        &reps[i],
                        &reps[j],
                        FULL_BRUTE_BOUND,
                        exec,
                    )?),
                    Some(profinite_evidence_with(
                        &reps[i],
                        &reps[j],
                        FULL_MODULUS_MAX,
                        exec,
                    )?),
                )
            } else {
                (None, None)
            };
            pairs.push(PairEvidence {
                i,
                j,
                conjugate_z,
                brute_force,
                modular,
            });
        }
    }
    Ok(pairs)
}

pub fn genus(a: &IntMat2, level: EvidenceLevel) -> Result<GenusReport> {
    genus_with(a, level, Exec::default())
}

pub fn genus_with(a: &IntMat2, level: EvidenceLevel, exec: Exec) -> Result<GenusReport> {
    let p = char_poly(a)?;
    let branch = theorem_branch(&p)?;
    let disc = p.disc();
    let canonical = canonical_form(a)?;
    let order = if p.is_irreducible() {
        Some(OrderDisc::from_disc(&disc)?)
    } else {
        None
    };

    let (fundamental, conductor, d) = match &order {
        Some(o) => (
            Some(o.fundamental.clone()),
            Some(o.conductor.clone()),
            Some(o.squarefree.clone()),
        ),
        // D = 4: both eigenvalues rational, Z[λ] = Z[x]/(x^2 - 1) of index 2 in Z × Z
        None if disc == BigInt::from(4) => (
            Some(BigInt::one()),
            Some(BigInt::from(2)),
            Some(BigInt::one()),
        ),
        None => (None, None, None),
    };
    let (h_field, h_order) = match &order {
        Some(o) => (
            wide_class_number(&o.field(), exec)?,
            Some(wide_class_number(o, exec)?),
        ),
        // the field is Q
        None => (1, None),
    };

    let (representatives, class_index) = if branch == TheoremBranch::MainQuadratic {
        let set = lm_representatives_with(&p, exec)?;
        let reps = set.matrices();
        let mut index = None;
        for (i, r) in reps.iter().enumerate() {
            if canonical_form(r)?.target == canonical.target {
                index = Some(i);
                break;
            }
        }
        (reps, index)
    } else {
        (vec![canonical.target.clone()], Some(0))
    };

    let genus = if branch == TheoremBranch::MainQuadratic {
        h_field
    } else {
        1
    };
    let discrepancy =
        conductor.as_ref().is_some_and(|f| !f.is_one()) && h_order.is_some_and(|h| h != h_field);

    let evidence = match level {
        EvidenceLevel::None => None,
        _ => Some(Evidence {
            level,
            pairs: pair_evidence(&representatives, level, exec)?,
        }),
    };

    Ok(GenusReport {
        matrix: a.clone(),
        char_poly: p,
        geometry: geometry(a)?,
        branch,
        disc,
        fundamental,
        conductor,
        d,
        h_field,
        h_order,
        genus,
        rigid: genus == 1,
        discrepancy,
        representatives,
        class_index,
        canonical,
        evidence,
        presentation: presentation(a)?,
    })
}

/// `tr A = 0` or `D = 0` implies genus 1. Returns whether the implication held.
pub fn corollary1_check(a: &IntMat2) -> Result<bool> {
    let p = char_poly(a)?;
    if !p.t.is_zero() && !p.disc().is_zero() {
        return Ok(true);
    }
    Ok(genus(a, EvidenceLevel::None)?.genus == 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Rigidity {
    Rigid,
    NonRigid,
}

/// Rigid when `M_A` is determined by the profinite completion of its group,
/// i.e. when the genus is 1.
pub fn rigidity_verdict(a: &IntMat2) -> Result<Rigidity> {
    Ok(if genus(a, EvidenceLevel::None)?.genus == 1 {
        Rigidity::Rigid
    } else {
        Rigidity::NonRigid
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::mat_inv;
    use proptest::prelude::*;

    fn m(rows: [[i64; 2]; 2]) -> IntMat2 {
        IntMat2::from_rows(rows)
    }

    #[test]
    fn genus_examples() {
        let r = genus(&m([[0, -1], [1, 0]]), EvidenceLevel::Fast).unwrap();
        assert_eq!(
            (r.genus, r.branch, r.h_field),
            (1, TheoremBranch::TraceZero, 1)
        );
        assert_eq!(r.representatives, vec![m([[0, -1], [1, 0]])]);

        let r = genus(&m([[1, 1], [0, 1]]), EvidenceLevel::Fast).unwrap();
        assert_eq!((r.genus, r.branch), (1, TheoremBranch::RepeatedOne));
        assert_eq!(r.geometry, GeometryLabel::Nil);

        let r = genus(&m([[2, 1], [1, 1]]), EvidenceLevel::Fast).unwrap();
        assert_eq!(
            (r.genus, r.geometry, r.disc.clone()),
            (1, GeometryLabel::Sol, 5.into())
        );

        let r = genus(&m([[6, 1], [1, 0]]), EvidenceLevel::Full).unwrap();
        assert_eq!((r.genus, r.geometry), (2, GeometryLabel::Sol));
        assert_eq!(r.representatives.len(), 2);
        assert!(!r.rigid);
        let ev = r.evidence.unwrap();
        assert_eq!(ev.pairs.len(), 1);
        assert!(ev.supports_genus());
    }

    #[test]
    fn degenerate_field_data() {
        let r = genus(&m([[0, 1], [1, 0]]), EvidenceLevel::None).unwrap();
        assert_eq!(r.fundamental, Some(1.into()));
        assert_eq!(r.conductor, Some(2.into()));
        assert_eq!(r.h_order, None);
        assert_eq!(r.representatives, vec![m([[0, 1], [1, 0]])]);
        let r = genus(&m([[-1, 3], [0, -1]]), EvidenceLevel::None).unwrap();
        assert_eq!(r.branch, TheoremBranch::RepeatedMinusOne);
        assert_eq!((r.fundamental, r.conductor, r.h_order), (None, None, None));
        assert!(genus(&m([[2, 0], [0, 1]]), EvidenceLevel::None).is_err());
    }

    #[test]
    fn corollary_and_rigidity_examples() {
        assert!(corollary1_check(&m([[0, 1], [1, 0]])).unwrap());
        assert!(corollary1_check(&m([[-1, 3], [0, -1]])).unwrap());
        assert!(corollary1_check(&m([[2, 1], [1, 1]])).unwrap());
        assert_eq!(
            rigidity_verdict(&m([[1, 0], [5, 1]])).unwrap(),
            Rigidity::Rigid
        );
        assert_eq!(
            rigidity_verdict(&m([[2, 1], [1, 1]])).unwrap(),
            Rigidity::Rigid
        );
        assert_eq!(
            rigidity_verdict(&m([[6, 1], [1, 0]])).unwrap(),
            Rigidity::NonRigid
        );
    }

    #[test]
    fn presentation_examples() {
        assert_eq!(
            presentation(&IntMat2::identity()).unwrap(),
            "⟨x,y,t | [x,y]=1, txt⁻¹=x, tyt⁻¹=y⟩"
        );
        assert_eq!(
            presentation(&m([[2, 1], [1, 1]])).unwrap(),
            "⟨x,y,t | [x,y]=1, txt⁻¹=x²y, tyt⁻¹=xy⟩"
        );
        assert_eq!(
            presentation(&m([[1, 0], [1, 1]])).unwrap(),
            "⟨x,y,t | [x,y]=1, txt⁻¹=xy, tyt⁻¹=y⟩"
        );
        assert_eq!(
            presentation(&m([[-1, 0], [12, -1]])).unwrap(),
            "⟨x,y,t | [x,y]=1, txt⁻¹=x⁻¹y¹², tyt⁻¹=y⁻¹⟩"
        );
    }

    #[test]
    fn discrepancy_flag_tracks_conductor() {
        for t in -12i64..=12 {
            for n in [-1i64, 1] {
                let r = genus(&CharPoly::new(t, n).companion(), EvidenceLevel::None).unwrap();
                let f_gt_1 = r.conductor.as_ref().is_some_and(|f| *f > BigInt::one());
                let differ = r.h_order.is_some_and(|h| h != r.h_field);
                assert_eq!(r.discrepancy, f_gt_1 && differ, "t={t} n={n}");
                assert!(r.genus >= 1);
                if r.branch != TheoremBranch::MainQuadratic {
                    assert_eq!(r.genus, 1);
                } else {
                    assert_eq!(r.genus, r.h_field);
                    assert_eq!(r.class_index, Some(0));
                }
            }
        }
    }

    #[test]
    fn corollary_one_exhaustive() {
        for a in crate::matrix::gl2_box(6) {
            assert!(corollary1_check(&a).unwrap(), "{a}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn genus_is_a_conjugation_invariant(
            a in prop::sample::select(crate::matrix::gl2_box(4)),
            p in prop::sample::select(crate::matrix::gl2_box(5)),
        ) {
            let b = &(&p * &a) * &mat_inv(&p).unwrap();
            let ra = genus(&a, EvidenceLevel::None).unwrap();
            let rb = genus(&b, EvidenceLevel::None).unwrap();
            prop_assert_eq!(ra.genus, rb.genus);
            prop_assert_eq!(ra.branch, rb.branch);
            prop_assert_eq!(ra.canonical.target, rb.canonical.target);
        }
    }
}
