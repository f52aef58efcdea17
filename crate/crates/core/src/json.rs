//! JSON algebra format:
//!
//! ```json
//! { "dim": 4, "brackets": { "1,2": { "3": "1" }, "1,3": { "4": "1" } }, "name": "L4_3" }
//! ```
//!
//! Indices are 1-based with `i < j`; omitted pairs are zero; coefficients are
//! rationals written `"p/q"` or `"p"`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::NilpotentAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{parse_rational, SparseVec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraJson {
    pub dim: usize,
    #[serde(default)]
    pub brackets: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl AlgebraJson {
    pub fn from_algebra(algebra: &NilpotentAlgebra) -> Self {
        let brackets = algebra
            .structure_constants()
            .map(|((i, j), v)| {
                let row = v
                    .iter()
                    .map(|(k, c)| ((k + 1).to_string(), c.to_string()))
                    .collect();
                (format!("{},{}", i + 1, j + 1), row)
            })
            .collect();
        AlgebraJson {
            dim: algebra.dim(),
            brackets,
            name: algebra.name().map(str::to_string),
        }
    }

    pub fn to_algebra(&self) -> Result<NilpotentAlgebra> {
        let mut pairs = Vec::new();
        for (key, row) in &self.brackets {
            let (i, j) = parse_pair(key)?;
            let mut entries = Vec::new();
            for (k, c) in row {
                let k: usize = k
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad basis index `{k}`")))?;
                if k == 0 || k > self.dim {
                    return Err(Error::Parse(format!(
                        "basis index {k} out of range 1..={}",
                        self.dim
                    )));
                }
                entries.push((k - 1, parse_rational(c)?));
            }
            pairs.push(((i - 1, j - 1), SparseVec::from_entries(entries)));
        }
        let algebra = NilpotentAlgebra::from_structure_constants(self.dim, pairs)?;
        Ok(match &self.name {
            Some(n) => algebra.with_name(n.clone()),
            None => algebra,
        })
    }
}

fn parse_pair(key: &str) -> Result<(usize, usize)> {
    let bad = || {
        Error::Parse(format!(
            "bracket key `{key}` must look like \"i,j\" with 1 <= i < j"
        ))
    };
    let (i, j) = key.split_once(',').ok_or_else(bad)?;
    let i: usize = i.trim().parse().map_err(|_| bad())?;
    let j: usize = j.trim().parse().map_err(|_| bad())?;
    if i == 0 || i >= j {
        return Err(bad());
    }
    Ok((i, j))
}

pub fn to_json_string(algebra: &NilpotentAlgebra) -> String {
    serde_json::to_string_pretty(&AlgebraJson::from_algebra(algebra)).expect("serializable")
}

pub fn from_json_str(text: &str) -> Result<NilpotentAlgebra> {
    let parsed: AlgebraJson = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("invalid algebra JSON: {e}")))?;
    parsed.to_algebra()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::linalg::ratio;

    #[test]
    fn l4_3_text() {
        let text = to_json_string(&catalog::l4_3());
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(
            value,
            serde_json::json!({
                "dim": 4,
                "brackets": { "1,2": { "3": "1" }, "1,3": { "4": "1" } },
                "name": "L4_3"
            })
        );
    }

    #[test]
    fn rational_coefficients() {
        let text = r#"{ "dim": 3, "brackets": { "1,2": { "3": "-2/4" } } }"#;
        let a = from_json_str(text).unwrap();
        assert_eq!(
            a.bracket_basis(0, 1),
            &SparseVec::from_entries([(2, ratio(-1, 2))])
        );
        assert_eq!(a.name(), None);
        assert!(to_json_string(&a).contains("\"-1/2\""));
    }

    #[test]
    fn malformed_input() {
        for bad in [
            r#"{ "dim": 3, "brackets": { "2,1": { "3": "1" } } }"#,
            r#"{ "dim": 3, "brackets": { "1,2": { "4": "1" } } }"#,
            r#"{ "dim": 3, "brackets": { "1;2": { "3": "1" } } }"#,
            r#"{ "dim": 3, "brackets": { "1,2": { "3": "x" } } }"#,
            r#"{ "dim": 2, "brackets": { "1,2": { "1": "1" } } }"#,
            r#"{ "dim": 3, "extra": 1 }"#,
            r#"not json"#,
        ] {
            assert!(from_json_str(bad).is_err(), "{bad}");
        }
    }
}
