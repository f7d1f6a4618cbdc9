//! Output rendering: JSON, CSV and aligned text tables.

use std::fmt::Write as _;

use serde::Serialize;

use crate::genus::GenusReport;
use crate::survey::SurveyRow;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Table,
}

pub const SURVEY_HEADER: [&str; 11] = [
    "t", "n", "D", "D0", "f", "geometry", "branch", "h_field", "h_order", "genus", "rigid",
];

/// Pretty JSON with a trailing newline.
pub fn json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("report types serialize");
    out.push('\n');
    out
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map(T::to_string).unwrap_or_default()
}

fn survey_cells(r: &SurveyRow) -> Vec<String> {
    vec![
        r.t.to_string(),
        r.n.to_string(),
        r.disc.to_string(),
        opt(&r.fundamental),
        opt(&r.conductor),
        r.geometry.to_string(),
        r.branch.to_string(),
        r.h_field.to_string(),
        opt(&r.h_order),
        r.genus.to_string(),
        r.rigid.to_string(),
    ]
}

pub fn survey_csv(rows: &[SurveyRow]) -> String {
    let mut out = SURVEY_HEADER.join(",");
    out.push('\n');
    for r in rows {
        out.push_str(&survey_cells(r).join(","));
        out.push('\n');
    }
    out
}

const BOLD_RED: &str = "\x1b[1;31m";
const GREEN: &str = "\x1b[32m";
const RESET: &str = "\x1b[0m";

/// Left-aligned columns separated by two spaces. `highlight` picks rows to
/// color when `color` is set.
fn table(header: &[&str], rows: &[Vec<String>], highlight: &[bool], color: bool) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (i, (cell, w)) in cells.iter().zip(&widths).enumerate() {
            if i + 1 == cells.len() {
                s.push_str(cell);
            } else {
                let _ = write!(s, "{cell:<w$}  ");
            }
        }
        s
    };
    let mut out = line(header.to_vec());
    out.push('\n');
    for (row, &hi) in rows.iter().zip(highlight) {
        let text = line(row.iter().map(String::as_str).collect());
        if color {
            let code = if hi { BOLD_RED } else { GREEN };
            let _ = writeln!(out, "{code}{text}{RESET}");
        } else {
            out.push_str(&text);
            out.push('\n');
        }
    }
    out
}

/// Non-rigid rows are highlighted.
pub fn survey_table(rows: &[SurveyRow], color: bool) -> String {
    let cells: Vec<Vec<String>> = rows.iter().map(survey_cells).collect();
    let highlight: Vec<bool> = rows.iter().map(|r| !r.rigid).collect();
    table(&SURVEY_HEADER, &cells, &highlight, color)
}

pub fn survey(rows: &[SurveyRow], format: Format, color: bool) -> String {
    match format {
        Format::Json => json(rows),
        Format::Csv => survey_csv(rows),
        Format::Table => survey_table(rows, color),
    }
}

pub fn genus_table(r: &GenusReport, color: bool) -> String {
    let fields: Vec<(&str, String)> = vec![
        ("matrix", r.matrix.to_string()),
        ("char poly", r.char_poly.to_string()),
        ("geometry", r.geometry.to_string()),
        ("branch", r.branch.to_string()),
        ("D", r.disc.to_string()),
        ("D0", opt(&r.fundamental)),
        ("conductor", opt(&r.conductor)),
        ("d", opt(&r.d)),
        ("h_field", r.h_field.to_string()),
        ("h_order", opt(&r.h_order)),
        ("genus", r.genus.to_string()),
        ("rigid", r.rigid.to_string()),
        ("discrepancy", r.discrepancy.to_string()),
        ("canonical", r.canonical.target.to_string()),
        ("conjugator", r.canonical.conjugator.to_string()),
        ("presentation", r.presentation.clone()),
    ];
    let width = fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in &fields {
        let v = match (*k, color) {
            ("genus", true) => {
                let code = if r.rigid { GREEN } else { BOLD_RED };
                format!("{code}{v}{RESET}")
            }
            _ => v.clone(),
        };
        let _ = writeln!(out, "{k:<width$}  {v}");
    }
    let _ = writeln!(out, "representatives:");
    for (i, m) in r.representatives.iter().enumerate() {
        let mark = if r.class_index == Some(i) {
            "  <- input"
        } else {
            ""
        };
        let _ = writeln!(out, "  [{i}] {m}{mark}");
    }
    if let Some(ev) = &r.evidence {
        let _ = writeln!(out, "evidence ({:?}):", ev.level);
        for p in &ev.pairs {
            let mut line = format!(
                "  {} vs {}: {}",
                p.i,
                p.j,
                if p.conjugate_z {
                    "conjugate over Z"
                } else {
                    "not conjugate over Z"
                }
            );
            if let Some(b) = &p.brute_force {
                match b.witness() {
                    Some(w) => {
                        let _ = write!(line, "; brute force found {}", w.p);
                    }
                    None => {
                        let _ = write!(line, "; brute force: none within the bound");
                    }
                }
            }
            if let Some(m) = &p.modular {
                let _ = write!(line, "; {}", m.verdict);
            }
            let _ = writeln!(out, "{line}");
        }
    }
    out
}

pub fn genus_report(r: &GenusReport, format: Format, color: bool) -> String {
    assert!(
        !r.representatives.is_empty(),
        "genus report without representatives"
    );
    match format {
        Format::Table => genus_table(r, color),
        _ => json(r),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::Exec;
    use crate::genus::{genus, EvidenceLevel};
    use crate::matrix::IntMat2;
    use crate::survey::{survey as run_survey, SurveySpec};

    #[test]
    fn csv_header_and_rows() {
        let rows = run_survey(
            &SurveySpec {
                tmax: 2,
                ..Default::default()
            },
            Exec::Sequential,
        )
        .unwrap();
        let csv = survey_csv(&rows);
        let mut lines = csv.lines();
        assert_eq!(
            lines.next(),
            Some("t,n,D,D0,f,geometry,branch,h_field,h_order,genus,rigid")
        );
        assert_eq!(lines.count(), rows.len());
        assert!(csv.contains("0,-1,4,1,2,Euclidean,TraceZero,1,,1,true"));
    }

    #[test]
    fn genus_json_keys() {
        let r = genus(&IntMat2::from_rows([[6, 1], [1, 0]]), EvidenceLevel::Fast).unwrap();
        let v: serde_json::Value = serde_json::from_str(&json(&r)).unwrap();
        for key in [
            "matrix",
            "geometry",
            "branch",
            "D",
            "D0",
            "conductor",
            "h_field",
            "h_order",
            "genus",
        ] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(v["representatives"].as_array().unwrap().len(), 2);
        assert_eq!(v["branch"], "MainQuadratic");
        assert_eq!(v["matrix"], serde_json::json!([[6, 1], [1, 0]]));
    }

    #[test]
    fn table_color_is_optional() {
        let rows = run_survey(
            &SurveySpec {
                tmax: 3,
                ..Default::default()
            },
            Exec::Sequential,
        )
        .unwrap();
        assert!(!survey_table(&rows, false).contains('\x1b'));
        assert!(survey_table(&rows, true).contains('\x1b'));
    }
}
