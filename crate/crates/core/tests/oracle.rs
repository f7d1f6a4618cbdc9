//! Class counts from exhaustive conjugator search, independent of the forms
//! machinery.

use solgenus::conjugacy::{are_conjugate_gl2z, brute_force_conjugator};
use solgenus::forms::{class_set, EquivMode};
use solgenus::latimer::{lm_representatives, similarity_classes};
use solgenus::matrix::{char_poly, CharPoly, IntMat2};
use solgenus::order::order_disc;
use solgenus::Exec;

const BOX: i64 = 8;
const SEARCH: u32 = 30;

fn matrices_with(p: &CharPoly) -> Vec<IntMat2> {
    let mut out = Vec::new();
    for a in -BOX..=BOX {
        for b in -BOX..=BOX {
            for c in -BOX..=BOX {
                for d in -BOX..=BOX {
                    let m = IntMat2::from_rows([[a, b], [c, d]]);
                    if m.is_unimodular() && char_poly(&m).unwrap() == *p {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

/// Greedy partition by bounded brute-force search.
fn oracle_classes(mats: &[IntMat2]) -> Vec<IntMat2> {
    let mut reps: Vec<IntMat2> = Vec::new();
    for m in mats {
        let known = reps.iter().any(|r| {
            brute_force_conjugator(r, m, SEARCH, Exec::Sequential)
                .unwrap()
                .witness()
                .is_some()
        });
        if !known {
            reps.push(m.clone());
        }
    }
    reps
}

fn small_polys() -> Vec<CharPoly> {
    let mut out = Vec::new();
    for t in -7i64..=7 {
        for n in [-1i64, 1] {
            let p = CharPoly::new(t, n);
            if p.is_irreducible() {
                out.push(p);
            }
        }
    }
    out
}

#[test]
fn class_counts_match_exhaustive_search() {
    for p in small_polys() {
        let mats = matrices_with(&p);
        let oracle = oracle_classes(&mats);
        let all = similarity_classes(&p).unwrap();
        assert_eq!(oracle.len(), all.len(), "{p}");
        let order = order_disc(&p).unwrap();
        if order.is_maximal() {
            let lm = lm_representatives(&p).unwrap();
            assert_eq!(lm.reps.len(), oracle.len(), "{p}");
            assert_eq!(
                class_set(&order, EquivMode::Improper)
                    .unwrap()
                    .class_number(),
                oracle.len()
            );
        }
    }
}

#[test]
fn every_matrix_lands_in_exactly_one_class() {
    for p in small_polys() {
        let classes: Vec<IntMat2> = similarity_classes(&p)
            .unwrap()
            .into_iter()
            .map(|c| c.rep.matrix)
            .collect();
        for m in matrices_with(&p) {
            let hits: Vec<usize> = classes
                .iter()
                .enumerate()
                .filter_map(|(i, r)| {
                    let w = are_conjugate_gl2z(&m, r).unwrap()?;
                    assert!(w.verify(&m, r));
                    Some(i)
                })
                .collect();
            assert_eq!(hits.len(), 1, "{m} has polynomial {p}");
        }
    }
}
