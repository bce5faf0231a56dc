//! JSON input documents describing a BCN.
//!
//! ```json
//! {"format": "delta", "n": 3, "m": 1, "L": [2, 5, 3, 5, 6, 4, 8, 7, 4, 5, 4, 5, 6, 7, 8, 7]}
//! {"format": "truth-table", "n": 1, "m": 1, "tables": [[0, 0, 1, 1]]}
//! ```
//!
//! Delta entries are 1-based state indices; column `(a-1)·2^n + b` is the
//! successor of state `b` under control `a`. Truth-table entry `t` is the
//! value of `f_i` at the assignment whose bits, `u_1` most significant, are
//! `(u_1..u_m, x_1..x_n)`.

use bcncat_core::algebra::{MAX_INPUT_VARS, MAX_STATE_VARS};
use bcncat_core::{build_l, Bcn, TruthTableSystem};
use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Payload {
    Delta(Vec<usize>),
    TruthTable(Vec<Vec<u8>>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BcnDocument {
    pub name: Option<String>,
    pub n: usize,
    pub m: usize,
    pub payload: Payload,
}

fn invalid(field: impl Into<String>, msg: impl Into<String>) -> CliError {
    CliError::Invalid {
        field: field.into(),
        message: msg.into(),
    }
}

fn get_count(obj: &Map<String, Value>, key: &str, min: usize, max: usize) -> Result<usize, CliError> {
    let v = obj
        .get(key)
        .ok_or_else(|| invalid(key, "missing required field"))?;
    let n = v
        .as_u64()
        .ok_or_else(|| invalid(key, format!("expected a nonnegative integer, got {v}")))?;
    let n = usize::try_from(n).map_err(|_| invalid(key, "value too large"))?;
    if n < min || n > max {
        return Err(invalid(key, format!("value {n} out of range [{min},{max}]")));
    }
    Ok(n)
}

fn get_array<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Vec<Value>, CliError> {
    obj.get(key)
        .ok_or_else(|| invalid(key, "missing required field"))?
        .as_array()
        .ok_or_else(|| invalid(key, "expected an array"))
}

pub fn parse_bcn(text: &str) -> Result<BcnDocument, CliError> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| invalid("<document>", format!("invalid JSON: {e}")))?;
    let obj = value
        .as_object()
        .ok_or_else(|| invalid("<document>", "expected a JSON object"))?;
    let format = obj
        .get("format")
        .ok_or_else(|| invalid("format", "missing required field"))?
        .as_str()
        .ok_or_else(|| invalid("format", "expected a string"))?;
    let name = match obj.get("name") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) => Some(s.clone()),
        Some(_) => return Err(invalid("name", "expected a string")),
    };
    let n = get_count(obj, "n", 1, MAX_STATE_VARS)?;
    let m = get_count(obj, "m", 0, MAX_INPUT_VARS)?;
    let states = 1usize << n;
    let expected_len = 1usize << (n + m);

    let payload = match format {
        "delta" => {
            let raw = get_array(obj, "L")?;
            if raw.len() != expected_len {
                return Err(invalid(
                    "L",
                    format!("expected 2^(n+m) = {expected_len} entries, found {}", raw.len()),
                ));
            }
            let mut cols = Vec::with_capacity(raw.len());
            for (k, v) in raw.iter().enumerate() {
                let field = format!("L[{k}]");
                let idx = v
                    .as_u64()
                    .ok_or_else(|| invalid(&field, format!("expected a positive integer, got {v}")))?
                    as usize;
                if idx == 0 || idx > states {
                    return Err(invalid(field, format!("index {idx} out of range [1,{states}]")));
                }
                cols.push(idx);
            }
            Payload::Delta(cols)
        }
        "truth-table" => {
            let raw = get_array(obj, "tables")?;
            if raw.len() != n {
                return Err(invalid(
                    "tables",
                    format!("expected n = {n} tables, found {}", raw.len()),
                ));
            }
            let mut tables = Vec::with_capacity(n);
            for (t, table) in raw.iter().enumerate() {
                let field = format!("tables[{t}]");
                let entries = table
                    .as_array()
                    .ok_or_else(|| invalid(&field, "expected an array"))?;
                if entries.len() != expected_len {
                    return Err(invalid(
                        &field,
                        format!("expected 2^(n+m) = {expected_len} entries, found {}", entries.len()),
                    ));
                }
                let mut bits = Vec::with_capacity(entries.len());
                for (k, e) in entries.iter().enumerate() {
                    match e.as_u64() {
                        Some(b @ (0 | 1)) => bits.push(b as u8),
                        _ => {
                            return Err(invalid(
                                format!("{field}[{k}]"),
                                format!("expected 0 or 1, got {e}"),
                            ))
                        }
                    }
                }
                tables.push(bits);
            }
            Payload::TruthTable(tables)
        }
        other => {
            return Err(invalid(
                "format",
                format!("unknown format tag \"{other}\" (expected \"delta\" or \"truth-table\")"),
            ))
        }
    };
    Ok(BcnDocument {
        name,
        n,
        m,
        payload,
    })
}

#[derive(Serialize)]
struct RawDocument<'a> {
    format: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    name: Option<&'a str>,
    n: usize,
    m: usize,
    #[serde(rename = "L", skip_serializing_if = "Option::is_none")]
    l: Option<&'a [usize]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tables: Option<&'a [Vec<u8>]>,
}

impl BcnDocument {
    pub fn to_json(&self) -> String {
        let (format, l, tables) = match &self.payload {
            Payload::Delta(cols) => ("delta", Some(cols.as_slice()), None),
            Payload::TruthTable(t) => ("truth-table", None, Some(t.as_slice())),
        };
        serde_json::to_string(&RawDocument {
            format,
            name: self.name.as_deref(),
            n: self.n,
            m: self.m,
            l,
            tables,
        })
        .expect("document serializes")
    }

    /// Algebraic form; truth tables go through `build_l`.
    pub fn to_bcn(&self) -> Result<Bcn, CliError> {
        match &self.payload {
            Payload::Delta(cols) => Ok(Bcn::from_delta(self.n, self.m, cols.clone())?),
            Payload::TruthTable(tables) => {
                let tables = tables
                    .iter()
                    .map(|t| t.iter().map(|&b| b == 1).collect())
                    .collect();
                Ok(build_l(&TruthTableSystem::new(self.n, self.m, tables)?))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_example_network() {
        let doc = parse_bcn(
            r#"{"format":"delta","n":3,"m":1,"L":[2,5,3,5,6,4,8,7,4,5,4,5,6,7,8,7]}"#,
        )
        .unwrap();
        let bcn = doc.to_bcn().unwrap();
        assert_eq!(bcn.state_count(), 8);
        assert_eq!(bcn.evaluate(1, 2).unwrap(), 4);
    }

    #[test]
    fn parses_identity_network() {
        let doc = parse_bcn(r#"{"format":"delta","n":1,"m":0,"L":[1,2]}"#).unwrap();
        assert_eq!(doc.payload, Payload::Delta(vec![1, 2]));
    }

    #[test]
    fn truth_tables_are_converted() {
        let doc = parse_bcn(r#"{"format":"truth-table","n":1,"m":1,"tables":[[0,0,1,1]]}"#).unwrap();
        assert_eq!(doc.to_bcn().unwrap().transition_matrix().columns(), &[1, 1, 2, 2]);
    }

    fn err(text: &str) -> String {
        parse_bcn(text).unwrap_err().to_string()
    }

    #[test]
    fn errors_name_the_field() {
        let e = err(r#"{"format":"delta","n":3,"m":1,"L":[9,5,3,5,6,4,8,7,4,5,4,5,6,7,8,7]}"#);
        assert!(e.contains("L[0]") && e.contains("index 9 out of range [1,8]"), "{e}");
        let e = err(r#"{"format":"delta","n":3,"m":1,"L":[1,2]}"#);
        assert!(e.contains("`L`") && e.contains("16"), "{e}");
        let e = err(r#"{"format":"bogus","n":1,"m":0}"#);
        assert!(e.contains("`format`") && e.contains("bogus"), "{e}");
        let e = err(r#"{"format":"delta","m":0,"L":[1,2]}"#);
        assert!(e.contains("`n`") && e.contains("missing"), "{e}");
        let e = err(r#"{"format":"truth-table","n":1,"m":0,"tables":[[0,2]]}"#);
        assert!(e.contains("tables[0][1]"), "{e}");
        let e = err(r#"{"format":"truth-table","n":2,"m":0,"tables":[[0,1,1,0]]}"#);
        assert!(e.contains("`tables`") && e.contains("expected n = 2"), "{e}");
        let e = err("[1,2]");
        assert!(e.contains("JSON object"), "{e}");
    }
}
