//! Conjugacy in GL2(Z/m): finite-level evidence for conjugacy over the
//! profinite integers.
//!
//! The search for a witness `P` with `P·A ≡ B·P (mod m)` runs separately
//! for every prime-power factor of `m`, and the witnesses are glued
//! entrywise by CRT. Each prime-power search is a direct lexicographic scan of
//! `(Z/q)^4`. The first equation involves only three entries of `P`, so it
//! prunes the innermost loop.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use crate::arith::{crt_pair, factor_u64};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::matrix::IntMat2;

/// `P` as residues `[[p0, p1], [p2, p3]]` modulo `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularWitness {
    pub m: u64,
    pub p: [u64; 4],
}

impl ModularWitness {
    pub fn matrix(&self) -> IntMat2 {
        IntMat2::new(self.p[0], self.p[1], self.p[2], self.p[3])
    }

    /// `P·A ≡ B·P (mod m)` and `gcd(det P, m) = 1`.
    pub fn verify(&self, a: &IntMat2, b: &IntMat2) -> bool {
        let p = self.matrix();
        let m = BigInt::from(self.m);
        let lhs = &p * a;
        let rhs = b * &p;
        let congruent = lhs
            .entries()
            .iter()
            .zip(rhs.entries())
            .all(|(x, y)| (*x - y).mod_floor(&m) == BigInt::from(0));
        congruent && p.det().mod_floor(&m).gcd(&m) == BigInt::from(1)
    }
}

impl Serialize for ModularWitness {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [[self.p[0], self.p[1]], [self.p[2], self.p[3]]].serialize(s)
    }
}

fn residues(a: &IntMat2, q: u64) -> [i128; 4] {
    let m = BigInt::from(q);
    a.entries()
        .map(|x| x.mod_floor(&m).to_i128().expect("residue fits"))
}

/// Lexicographically first `P ∈ GL2(Z/q)` with `P·A ≡ B·P (mod q)`.
pub fn scan_gl2_mod(a: &IntMat2, b: &IntMat2, q: u64, exec: Exec) -> Option<[u64; 4]> {
    assert!((2..1 << 31).contains(&q), "modulus out of scan range");
    let [a1, a2, a3, a4] = residues(a, q);
    let [b1, b2, b3, b4] = residues(b, q);
    let qi = q as i128;
    let zero = |v: i128| v.rem_euclid(qi) == 0;
    exec.find_map_first(0..q as i64, |x| {
        let x = x as i128;
        for y in 0..qi {
            for z in 0..qi {
                if !zero(x * (a1 - b1) + y * a3 - b2 * z) {
                    continue;
                }
                for w in 0..qi {
                    if zero(x * a2 + y * (a4 - b1) - b2 * w)
                        && zero(z * (a1 - b4) + w * a3 - b3 * x)
                        && zero(z * a2 + w * (a4 - b4) - b3 * y)
                        && (x * w - y * z).rem_euclid(qi).gcd(&qi) == 1
                    {
                        return Some([x as u64, y as u64, z as u64, w as u64]);
                    }
                }
            }
        }
        None
    })
}

fn check_modulus(m: u64) -> Result<()> {
    if m < 2 {
        Err(Error::InvalidModulus(m))
    } else if m >= 1 << 31 {
        Err(Error::TooLarge {
            what: format!("modulus {m}"),
        })
    } else {
        Ok(())
    }
}

pub fn are_conjugate_mod_m(a: &IntMat2, b: &IntMat2, m: u64) -> Result<Option<ModularWitness>> {
    are_conjugate_mod_m_with(a, b, m, Exec::default())
}

/// Prime-power searches combined by CRT.
pub fn are_conjugate_mod_m_with(
    a: &IntMat2,
    b: &IntMat2,
    m: u64,
    exec: Exec,
) -> Result<Option<ModularWitness>> {
    check_modulus(m)?;
    let mut acc: Option<(u64, [u64; 4])> = None;
    for (p, e) in factor_u64(m) {
        let q = p.pow(e);
        let Some(w) = scan_gl2_mod(a, b, q, exec) else {
            return Ok(None);
        };
        acc = Some(match acc {
            None => (q, w),
            Some((m0, w0)) => {
                let mut out = [0u64; 4];
                for i in 0..4 {
                    out[i] = crt_pair(w0[i], m0, w[i], q);
                }
                (m0 * q, out)
            }
        });
    }
    let (_, p) = acc.expect("m >= 2 has a prime factor");
    let witness = ModularWitness { m, p };
    if !witness.verify(a, b) {
        return Err(Error::Internal(format!(
            "CRT witness mod {m} failed verification"
        )));
    }
    Ok(Some(witness))
}

/// Single scan of all of GL2(Z/m), without factoring.
pub fn are_conjugate_mod_m_direct(
    a: &IntMat2,
    b: &IntMat2,
    m: u64,
    exec: Exec,
) -> Result<Option<ModularWitness>> {
    check_modulus(m)?;
    Ok(scan_gl2_mod(a, b, m, exec).map(|p| ModularWitness { m, p }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModularRow {
    pub m: u64,
    pub witness: Option<ModularWitness>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum ProfiniteVerdict {
    Consistent { up_to: u64 },
    Refuted { at: u64 },
}

impl fmt::Display for ProfiniteVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProfiniteVerdict::Consistent { up_to } => {
                write!(f, "consistent with profinite conjugacy up to m = {up_to}")
            }
            ProfiniteVerdict::Refuted { at } => write!(f, "refuted at m = {at}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProfiniteEvidence {
    pub m_max: u64,
    #[serde(flatten)]
    pub verdict: ProfiniteVerdict,
    pub table: Vec<ModularRow>,
}

impl ProfiniteEvidence {
    pub fn all_witnessed(&self) -> bool {
        self.table.iter().all(|r| r.witness.is_some())
    }
}

/// Witness table for `m = 2..=m_max`, without any precondition on `A`, `B`.
pub fn modular_table(
    a: &IntMat2,
    b: &IntMat2,
    m_max: u64,
    exec: Exec,
) -> Result<ProfiniteEvidence> {
    check_modulus(m_max)?;
    let ms: Vec<u64> = (2..=m_max).collect();
    let rows = exec.map(&ms, |&m| {
        are_conjugate_mod_m_with(a, b, m, exec).map(|witness| ModularRow { m, witness })
    });
    let table = rows.into_iter().collect::<Result<Vec<_>>>()?;
    let verdict = match table.iter().find(|r| r.witness.is_none()) {
        Some(r) => ProfiniteVerdict::Refuted { at: r.m },
        None => ProfiniteVerdict::Consistent { up_to: m_max },
    };
    Ok(ProfiniteEvidence {
        m_max,
        verdict,
        table,
    })
}

/// Modular evidence for two matrices with the same characteristic polynomial.
pub fn profinite_evidence(a: &IntMat2, b: &IntMat2, m_max: u64) -> Result<ProfiniteEvidence> {
    profinite_evidence_with(a, b, m_max, Exec::default())
}

pub fn profinite_evidence_with(
    a: &IntMat2,
    b: &IntMat2,
    m_max: u64,
    exec: Exec,
) -> Result<ProfiniteEvidence> {
    if a.trace() != b.trace() || a.det() != b.det() {
        return Err(Error::CharPolyMismatch {
            left: format!("(t={}, n={})", a.trace(), a.det()),
            right: format!("(t={}, n={})", b.trace(), b.det()),
        });
    }
    modular_table(a, b, m_max, exec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: [[i64; 2]; 2]) -> IntMat2 {
        IntMat2::from_rows(rows)
    }

    #[test]
    fn identity_witness_for_equal_matrices() {
        let a = m([[2, 1], [1, 1]]);
        for q in [2u64, 6, 12, 30] {
            let w = are_conjugate_mod_m(&a, &a, q).unwrap().unwrap();
            assert!(w.verify(&a, &a));
        }
        let w = are_conjugate_mod_m_direct(&a, &a, 7, Exec::Sequential)
            .unwrap()
            .unwrap();
        assert!(w.verify(&a, &a));
    }

    #[test]
    fn trace_obstruction() {
        let a = m([[0, -1], [1, 3]]);
        let b = m([[0, -1], [1, 4]]);
        assert_eq!(are_conjugate_mod_m(&a, &b, 5).unwrap(), None);
        assert!(matches!(
            are_conjugate_mod_m(&a, &b, 1),
            Err(Error::InvalidModulus(1))
        ));
        assert!(profinite_evidence(&a, &b, 10).is_err());
    }

    #[test]
    fn genus_two_pair_is_locally_conjugate() {
        let a = m([[0, 1], [1, 6]]);
        let b = m([[4, 3], [3, 2]]);
        let w = are_conjugate_mod_m(&a, &b, 7).unwrap().unwrap();
        assert!(w.verify(&a, &b));
        let ev = profinite_evidence(&a, &b, 30).unwrap();
        assert_eq!(ev.verdict, ProfiniteVerdict::Consistent { up_to: 30 });
        assert!(ev.all_witnessed());
    }

    #[test]
    fn mod_two_separates_the_two_involution_classes() {
        let swap = m([[0, 1], [1, 0]]);
        let diag = m([[1, 0], [0, -1]]);
        let ev = modular_table(&swap, &diag, 10, Exec::Sequential).unwrap();
        assert_eq!(ev.verdict, ProfiniteVerdict::Refuted { at: 2 });
    }

    #[test]
    fn crt_path_agrees_with_direct_scan() {
        let mats = [
            m([[0, 1], [1, 6]]),
            m([[4, 3], [3, 2]]),
            m([[1, 2], [0, 1]]),
            m([[1, 0], [0, 1]]),
            m([[0, 1], [1, 0]]),
            m([[1, 0], [0, -1]]),
            m([[0, -1], [1, 3]]),
            m([[2, 1], [1, 1]]),
            m([[-1, 1], [0, -1]]),
            m([[1, 4], [0, 1]]),
        ];
        for a in &mats {
            for b in &mats {
                for q in 2..=12u64 {
                    let crt = are_conjugate_mod_m_with(a, b, q, Exec::Sequential).unwrap();
                    let direct = are_conjugate_mod_m_direct(a, b, q, Exec::Sequential).unwrap();
                    assert_eq!(crt.is_some(), direct.is_some(), "{a} vs {b} mod {q}");
                    if let Some(w) = direct {
                        assert!(w.verify(a, b));
                    }
                }
            }
        }
    }
}
