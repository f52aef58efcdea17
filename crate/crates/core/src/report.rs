//! Corpus reports and the shipped expected-value table.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::NilpotentAlgebra;
use crate::catalog;
use crate::error::{Error, Result};
use crate::multiplier::{checked_bounds, s2_from_dim, Analyzer, Verdict};

/// Catalog entries and their sums with `A(1)`, `A(2)`, plus the Heisenberg
/// family up to dimension 9.
pub const CORPUS: &[&str] = &[
    "A(3)",
    "H(1)",
    "H(1)+A(1)",
    "H(1)+A(2)",
    "H(1)+A(3)",
    "H(1)+A(4)",
    "H(2)",
    "H(2)+A(1)",
    "H(2)+A(2)",
    "H(3)",
    "H(3)+A(1)",
    "H(3)+A(2)",
    "L4_3",
    "L4_3+A(1)",
    "L4_3+A(2)",
    "L5_5",
    "L5_5+A(1)",
    "L5_5+A(2)",
    "L5_8",
    "L5_8+A(1)",
    "L5_8+A(2)",
];

const EXPECTED: &str = include_str!("../fixtures/report.json");

pub const ABELIAN_MARK: &str = "n/a (abelian)";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplierReport {
    pub name: String,
    pub n: usize,
    pub m: usize,
    pub class: usize,
    pub c: usize,
    pub dim_multiplier: usize,
    pub s2: Option<i64>,
    pub bound: Option<i64>,
    pub slack: Option<i64>,
    pub verdict: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub two_capable: Option<bool>,
}

impl Analyzer {
    /// One report row. `s2`, bounds and the verdict are filled in for `c = 2`
    /// on non-abelian input.
    pub fn report(
        &self,
        algebra: &NilpotentAlgebra,
        c: usize,
        capability: bool,
    ) -> Result<MultiplierReport> {
        let dim = self.multiplier_dim(algebra, c)?;
        let mut row = MultiplierReport {
            name: algebra.label(),
            n: algebra.dim(),
            m: algebra.derived_dim(),
            class: algebra.class(),
            c,
            dim_multiplier: dim,
            s2: None,
            bound: None,
            slack: None,
            verdict: None,
            two_capable: None,
        };
        if c == 2 {
            if algebra.is_abelian() {
                row.verdict = Some(ABELIAN_MARK.to_string());
            } else {
                let s2 = s2_from_dim(row.n, dim)?;
                let bounds = checked_bounds(row.n, row.m, dim)?;
                row.s2 = Some(s2);
                row.bound = Some(bounds.bound);
                row.slack = Some(bounds.slack);
                row.verdict = Some(Verdict::from_s2(s2)?.to_string());
            }
        }
        if capability {
            row.two_capable = Some(self.two_capable(algebra)?);
        }
        Ok(row)
    }

    /// Reports every corpus algebra at `c = 2` with capability, in corpus order.
    pub fn corpus_report(&self) -> Result<Vec<MultiplierReport>> {
        CORPUS
            .par_iter()
            .map(|name| self.report(&catalog::catalog(name)?, 2, true))
            .collect()
    }
}

/// The expected table shipped with the crate.
pub fn expected_table() -> Result<Vec<MultiplierReport>> {
    serde_json::from_str(EXPECTED).map_err(|e| Error::Internal(format!("bad report fixture: {e}")))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub name: String,
    pub field: &'static str,
    pub expected: String,
    pub found: String,
}

/// Cell-by-cell comparison; rows are matched by name.
pub fn compare(rows: &[MultiplierReport], expected: &[MultiplierReport]) -> Vec<Mismatch> {
    let mut out = Vec::new();
    for want in expected {
        let Some(got) = rows.iter().find(|r| r.name == want.name) else {
            out.push(Mismatch {
                name: want.name.clone(),
                field: "row",
                expected: "present".into(),
                found: "missing".into(),
            });
            continue;
        };
        let cells = |r: &MultiplierReport| {
            [
                ("n", r.n.to_string()),
                ("m", r.m.to_string()),
                ("class", r.class.to_string()),
                ("c", r.c.to_string()),
                ("dim_multiplier", r.dim_multiplier.to_string()),
                ("s2", format!("{:?}", r.s2)),
                ("bound", format!("{:?}", r.bound)),
                ("slack", format!("{:?}", r.slack)),
                ("verdict", format!("{:?}", r.verdict)),
                ("two_capable", format!("{:?}", r.two_capable)),
            ]
        };
        for ((field, e), (_, f)) in cells(want).into_iter().zip(cells(got)) {
            if e != f {
                out.push(Mismatch {
                    name: want.name.clone(),
                    field,
                    expected: e,
                    found: f,
                });
            }
        }
    }
    out
}

fn opt<T: ToString>(v: &Option<T>, none: &str) -> String {
    v.as_ref().map_or_else(|| none.to_string(), T::to_string)
}

/// Fixed-width text table.
pub fn render_table(rows: &[MultiplierReport]) -> String {
    let header = [
        "name",
        "n",
        "m",
        "class",
        "c",
        "dim M",
        "s2",
        "bound",
        "slack",
        "verdict",
        "2-capable",
    ];
    let body: Vec<[String; 11]> = rows
        .iter()
        .map(|r| {
            let s2_none = if r.verdict.as_deref() == Some(ABELIAN_MARK) {
                ABELIAN_MARK
            } else {
                "-"
            };
            [
                r.name.clone(),
                r.n.to_string(),
                r.m.to_string(),
                r.class.to_string(),
                r.c.to_string(),
                r.dim_multiplier.to_string(),
                opt(&r.s2, s2_none),
                opt(&r.bound, "-"),
                opt(&r.slack, "-"),
                opt(&r.verdict, "-"),
                opt(&r.two_capable, "-"),
            ]
        })
        .collect();
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in &body {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let parts: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        let _ = writeln!(out, "{}", parts.join("  ").trim_end());
    };
    line(header.to_vec());
    for row in &body {
        line(row.iter().map(String::as_str).collect());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_covers_corpus() {
        let expected = expected_table().unwrap();
        let names: Vec<&str> = expected.iter().map(|r| r.name.as_str()).collect();
        assert_eq!(names, CORPUS);
    }

    #[test]
    fn single_rows() {
        let a = Analyzer::default();
        let row = a.report(&catalog::l4_3(), 2, true).unwrap();
        assert_eq!(
            (
                row.n,
                row.m,
                row.class,
                row.dim_multiplier,
                row.s2,
                row.two_capable
            ),
            (4, 2, 3, 6, Some(5), Some(true))
        );
        assert_eq!(row.verdict.as_deref(), Some("L4_3 or L5_8"));

        let abelian = a.report(&catalog::abelian(3).unwrap(), 2, false).unwrap();
        assert_eq!(abelian.s2, None);
        assert_eq!(abelian.verdict.as_deref(), Some(ABELIAN_MARK));
        assert!(render_table(&[abelian]).contains("n/a (abelian)  -"));

        let schur = a
            .report(&catalog::heisenberg(1).unwrap(), 1, false)
            .unwrap();
        assert_eq!((schur.dim_multiplier, schur.verdict), (2, None));
    }

    #[test]
    fn compare_reports_cells() {
        let mut rows = expected_table().unwrap();
        assert!(compare(&rows, &rows.clone()).is_empty());
        let expected = rows.clone();
        rows[1].dim_multiplier += 1;
        rows.pop();
        let diff = compare(&rows, &expected);
        assert_eq!(diff.len(), 2);
        assert_eq!(diff[0].field, "dim_multiplier");
        assert_eq!(diff[1].field, "row");
    }
}
