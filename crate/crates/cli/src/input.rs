use std::fs;
use std::path::Path;

use gkz_hodge_core::linalg::IntMatrix;
use gkz_hodge_core::weyl::{parse_element, Sig, Signature, WeylElement};
use serde::Deserialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::report::InputDigest;

#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

fn err(msg: impl Into<String>) -> InputError {
    InputError(msg.into())
}

pub struct Loaded {
    pub text: String,
    pub digest: InputDigest,
}

pub fn load(path: &Path) -> Result<Loaded, InputError> {
    let bytes = fs::read(path).map_err(|e| err(format!("cannot read {}: {e}", path.display())))?;
    let sha256 = hex::encode(Sha256::digest(&bytes));
    let text = String::from_utf8(bytes).map_err(|_| err(format!("{} is not UTF-8", path.display())))?;
    Ok(Loaded { text, digest: InputDigest { path: path.display().to_string(), sha256 } })
}

/// Accepts `[[..], ..]`, `{"matrix": [[..], ..]}`, `{"rows": r, "cols": c,
/// "entries": ..}` (nested rows or one row-major list) or whitespace-separated rows, one per line,
/// with `#` comments.
pub fn parse_matrix(text: &str) -> Result<IntMatrix, InputError> {
    let trimmed = text.trim_start();
    let rows = if trimmed.starts_with('[') || trimmed.starts_with('{') {
        let v: Value = serde_json::from_str(text).map_err(|e| err(format!("invalid JSON: {e}")))?;
        matrix_from_json(&v)?
    } else {
        text.lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty())
            .map(|l| {
                l.split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|t| !t.is_empty())
                    .map(|t| t.parse::<i64>().map_err(|_| err(format!("not an integer: {t:?}"))))
                    .collect()
            })
            .collect::<Result<Vec<Vec<i64>>, _>>()?
    };
    build(rows)
}

pub fn matrix_from_json(v: &Value) -> Result<Vec<Vec<i64>>, InputError> {
    match v {
        Value::Array(_) => serde_json::from_value(v.clone()).map_err(|e| err(format!("matrix rows: {e}"))),
        Value::Object(o) => {
            if let Some(m) = o.get("matrix") {
                return matrix_from_json(m);
            }
            let (Some(r), Some(c), Some(e)) = (o.get("rows"), o.get("cols"), o.get("entries")) else {
                return Err(err("expected a \"matrix\" field or \"rows\", \"cols\" and \"entries\""));
            };
            let r = r.as_u64().ok_or_else(|| err("\"rows\" must be a nonnegative integer"))? as usize;
            let c = c.as_u64().ok_or_else(|| err("\"cols\" must be a nonnegative integer"))? as usize;
            let rows = if e.as_array().is_some_and(|a| a.iter().all(Value::is_array)) && r > 0 {
                matrix_from_json(e)?
            } else {
                let e: Vec<i64> = serde_json::from_value(e.clone()).map_err(|e| err(format!("entries: {e}")))?;
                if e.len() != r * c {
                    return Err(err(format!("{} entries for a {r}x{c} matrix", e.len())));
                }
                if c == 0 { vec![vec![]; r] } else { e.chunks(c).map(<[i64]>::to_vec).collect() }
            };
            if rows.len() != r || rows.iter().any(|row| row.len() != c) {
                return Err(err(format!("entries do not form a {r}x{c} matrix")));
            }
            Ok(rows)
        }
        _ => Err(err("a matrix must be a JSON array of rows or an object")),
    }
}

fn build(rows: Vec<Vec<i64>>) -> Result<IntMatrix, InputError> {
    if rows.is_empty() || rows[0].is_empty() {
        return Err(err("empty matrix"));
    }
    if rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err(err("rows have different lengths"));
    }
    IntMatrix::from_rows(&rows).map_err(|e| err(e.to_string()))
}

/// A comma separated integer vector given as one argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntList(pub Vec<i64>);

pub fn parse_list(s: &str) -> Result<IntList, String> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<i64>().map_err(|_| format!("not an integer: {t:?}")))
        .collect::<Result<_, _>>()
        .map(IntList)
}

/// `a:b` with `a <= b`.
pub fn parse_box(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once(':').ok_or("expected a:b")?;
    let a: i64 = a.trim().parse().map_err(|_| format!("not an integer: {a:?}"))?;
    let b: i64 = b.trim().parse().map_err(|_| format!("not an integer: {b:?}"))?;
    if a > b {
        return Err(format!("empty box {a}:{b}"));
    }
    Ok((a, b))
}

/// Operators over named variables, e.g. `{"variables": ["w", "t"], "marked": "t",
/// "generators": ["t*d_t + w*d_w"]}`.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorFile {
    pub variables: Vec<String>,
    #[serde(default)]
    pub marked: Option<String>,
    pub generators: Vec<String>,
}

pub fn signature(variables: &[String], marked: Option<&str>) -> Result<Sig, InputError> {
    let mut s = Signature::new(variables).map_err(|e| err(e.to_string()))?;
    if let Some(t) = marked {
        s = s.with_marked(t).map_err(|e| err(e.to_string()))?;
    }
    Ok(s.into_arc())
}

pub fn parse_operators(sig: &Sig, texts: &[String]) -> Result<Vec<WeylElement>, InputError> {
    texts.iter().map(|t| parse_element(sig, t).map_err(|e| err(format!("operator {t:?}: {e}")))).collect()
}

/// A morphism `D/I -> D/J`, `P -> P R`, with the order filtrations shifted and
/// a torus grading given by its matrix rows.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismFile {
    pub variables: Vec<String>,
    pub source: Vec<String>,
    pub target: Vec<String>,
    pub multiplier: String,
    pub grading: Vec<Vec<i64>>,
    #[serde(default)]
    pub source_shift: i64,
    #[serde(default)]
    pub target_shift: i64,
}

pub fn is_object_with(text: &str, key: &str) -> bool {
    serde_json::from_str::<Value>(text).ok().and_then(|v| v.as_object().map(|o| o.contains_key(key))).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_formats_agree() {
        let expected = IntMatrix::from_rows(&[vec![1i64, 1, 1], vec![0, 1, 2]]).unwrap();
        for text in [
            "[[1,1,1],[0,1,2]]",
            "{\"matrix\": [[1,1,1],[0,1,2]]}",
            "{\"rows\": 2, \"cols\": 3, \"entries\": [1,1,1,0,1,2]}",
            "{\"rows\": 2, \"cols\": 3, \"entries\": [[1,1,1],[0,1,2]]}",
            "# segment\n1 1 1\n0 1 2\n",
        ] {
            assert_eq!(parse_matrix(text).unwrap(), expected, "{text}");
        }
    }

    #[test]
    fn bad_matrices() {
        assert!(parse_matrix("[[1,2],[3]]").is_err());
        assert!(parse_matrix("{\"rows\": 2, \"cols\": 2, \"entries\": [1]}").is_err());
        assert!(parse_matrix("{\"rows\": 2, \"cols\": 2, \"entries\": [[1,2,3],[4,5,6]]}").is_err());
        assert!(parse_matrix("1 x").is_err());
        assert!(parse_matrix("").is_err());
    }

    #[test]
    fn boxes_and_lists() {
        assert_eq!(parse_box("-4:2"), Ok((-4, 2)));
        assert!(parse_box("3:1").is_err());
        assert_eq!(parse_list("1, -2,3"), Ok(IntList(vec![1, -2, 3])));
    }
}
