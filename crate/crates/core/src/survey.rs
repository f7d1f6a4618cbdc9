//! Batch survey of genus over characteristic polynomials `x^2 - t x + n`.
//!
//! Each `(t, n)` cell is represented by its companion matrix; genus and
//! field data depend only on the polynomial.

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::Result;
use crate::exec::Exec;
use crate::genus::{genus_with, EvidenceLevel, TheoremBranch};
use crate::matrix::{CharPoly, GeometryLabel};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DetFilter {
    #[default]
    Both,
    Plus,
    Minus,
}

impl DetFilter {
    fn dets(self) -> &'static [i64] {
        match self {
            DetFilter::Both => &[-1, 1],
            DetFilter::Plus => &[1],
            DetFilter::Minus => &[-1],
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SurveySpec {
    pub tmax: u32,
    pub det: DetFilter,
    /// Keep only rows of this geometry.
    pub geometry: Option<GeometryLabel>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurveyRow {
    pub t: i64,
    pub n: i64,
    #[serde(rename = "D", serialize_with = "crate::json::int")]
    pub disc: BigInt,
    #[serde(rename = "D0", serialize_with = "crate::json::opt_int")]
    pub fundamental: Option<BigInt>,
    #[serde(rename = "f", serialize_with = "crate::json::opt_int")]
    pub conductor: Option<BigInt>,
    pub geometry: GeometryLabel,
    pub branch: TheoremBranch,
    pub h_field: usize,
    pub h_order: Option<usize>,
    pub genus: usize,
    pub rigid: bool,
}

fn row(t: i64, n: i64, exec: Exec) -> Result<SurveyRow> {
    let p = CharPoly::new(t, n);
    let r = genus_with(&p.companion(), EvidenceLevel::None, exec)?;
    Ok(SurveyRow {
        t,
        n,
        disc: r.disc,
        fundamental: r.fundamental,
        conductor: r.conductor,
        geometry: r.geometry,
        branch: r.branch,
        h_field: r.h_field,
        h_order: r.h_order,
        genus: r.genus,
        rigid: r.rigid,
    })
}

/// Rows sorted by `(t, n)`, identical for every execution strategy.
pub fn survey(spec: &SurveySpec, exec: Exec) -> Result<Vec<SurveyRow>> {
    let tmax = i64::from(spec.tmax);
    let cells: Vec<(i64, i64)> = (-tmax..=tmax)
        .flat_map(|t| spec.det.dets().iter().map(move |&n| (t, n)))
        .collect();
    // cells are the unit of parallelism; each runs its inner scans sequentially
    let rows = exec.map(&cells, |&(t, n)| row(t, n, Exec::Sequential));
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(rows
        .into_iter()
        .filter(|r| spec.geometry.is_none_or(|g| r.geometry == g))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_counts() {
        let all = survey(
            &SurveySpec {
                tmax: 10,
                ..Default::default()
            },
            Exec::Sequential,
        )
        .unwrap();
        assert_eq!(all.len(), 42);
        let sol = SurveySpec {
            tmax: 10,
            geometry: Some(GeometryLabel::Sol),
            ..Default::default()
        };
        assert_eq!(survey(&sol, Exec::Sequential).unwrap().len(), 36);
        let plus = SurveySpec {
            tmax: 10,
            det: DetFilter::Plus,
            geometry: None,
        };
        assert_eq!(survey(&plus, Exec::Sequential).unwrap().len(), 21);
    }

    #[test]
    fn rows_are_sorted_and_sane() {
        let rows = survey(
            &SurveySpec {
                tmax: 12,
                ..Default::default()
            },
            Exec::Parallel,
        )
        .unwrap();
        assert!(rows.windows(2).all(|w| (w[0].t, w[0].n) < (w[1].t, w[1].n)));
        for r in &rows {
            if r.branch != TheoremBranch::MainQuadratic {
                assert_eq!(r.genus, 1);
            }
            assert_eq!(r.rigid, r.genus == 1);
        }
    }

    #[test]
    fn strategies_agree() {
        let spec = SurveySpec {
            tmax: 15,
            ..Default::default()
        };
        assert_eq!(
            survey(&spec, Exec::Sequential).unwrap(),
            survey(&spec, Exec::Parallel).unwrap()
        );
    }
}
