//! The algebra file: a JSON object with `field`, `dim`, optional `labels`, and sparse
//! upper-triangular `brackets`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use liealg::algebra::BracketEntry;
use liealg::{FieldSpec, LieAlgebra, LieError};
use serde::de::{MapAccess, Visitor};
use serde::{Deserialize, Deserializer};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{path}: {message}")]
    Field { path: String, message: String },
    #[error("{path}: non-canonical scalar: {reason}")]
    NonCanonicalScalar { path: String, value: String, reason: String },
    #[error("{path}: duplicate entry for pair ({i}, {j})")]
    DuplicatePair { path: String, i: usize, j: usize },
    #[error(transparent)]
    Invalid(#[from] LieError),
}

#[derive(Deserialize)]
enum RawField {
    Q,
    Fp(u64),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    field: RawField,
    dim: usize,
    #[serde(default)]
    labels: Option<Vec<String>>,
    #[serde(default)]
    brackets: Vec<RawEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    i: usize,
    j: usize,
    v: Pairs,
}

/// Map entries in file order, duplicates kept so they can be rejected.
struct Pairs(Vec<(String, String)>);

impl<'de> Deserialize<'de> for Pairs {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Pairs;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map from basis index to scalar string")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut m: A) -> Result<Pairs, A::Error> {
                let mut out = Vec::new();
                while let Some((k, v)) = m.next_entry::<String, String>()? {
                    out.push((k, v));
                }
                Ok(Pairs(out))
            }
        }
        d.deserialize_map(V)
    }
}

fn field_err(path: impl Into<String>, message: impl Into<String>) -> FormatError {
    FormatError::Field { path: path.into(), message: message.into() }
}

fn parse_index(s: &str) -> Option<usize> {
    let ok = !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()) && (s == "0" || !s.starts_with('0'));
    ok.then(|| s.parse().ok()).flatten()
}

/// Parses and validates an algebra file.
pub fn parse_algebra(bytes: &[u8]) -> Result<LieAlgebra, FormatError> {
    let text = std::str::from_utf8(bytes).map_err(|e| FormatError::Syntax {
        line: 1 + bytes[..e.valid_up_to()].iter().filter(|b| **b == b'\n').count(),
        column: 0,
        message: "input is not UTF-8".into(),
    })?;
    let raw: RawFile = serde_json::from_str(text).map_err(|e| FormatError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let field = match raw.field {
        RawField::Q => FieldSpec::Rationals,
        RawField::Fp(p) => FieldSpec::prime(p).map_err(|e| field_err("field.Fp", e.to_string()))?,
    };
    let dim = raw.dim;
    let mut seen = BTreeSet::new();
    let mut entries = Vec::with_capacity(raw.brackets.len());
    for (n, e) in raw.brackets.into_iter().enumerate() {
        let path = format!("brackets[{n}]");
        if e.i >= e.j {
            return Err(field_err(&path, format!("need i < j, got i = {}, j = {}", e.i, e.j)));
        }
        if e.j >= dim {
            return Err(field_err(&path, format!("index {} out of range for dim {dim}", e.j)));
        }
        if !seen.insert((e.i, e.j)) {
            return Err(FormatError::DuplicatePair { path, i: e.i, j: e.j });
        }
        let mut v = Vec::with_capacity(e.v.0.len());
        let mut keys = BTreeSet::new();
        for (k, s) in e.v.0 {
            let kpath = format!("{path}.v[{k:?}]");
            let idx = parse_index(&k).ok_or_else(|| field_err(&kpath, "key is not a canonical index"))?;
            if idx >= dim {
                return Err(field_err(&kpath, format!("index {idx} out of range for dim {dim}")));
            }
            if !keys.insert(idx) {
                return Err(field_err(&kpath, "repeated index"));
            }
            let c = field
                .parse_canonical(&s)
                .map_err(|reason| FormatError::NonCanonicalScalar { path: kpath, value: s.clone(), reason })?;
            v.push((idx, c));
        }
        entries.push(BracketEntry::new(e.i, e.j, v));
    }
    let l = LieAlgebra::validate(field, dim, &entries)?;
    Ok(match raw.labels {
        Some(labels) => {
            if labels.len() != dim {
                return Err(field_err("labels", format!("expected {dim} labels, got {}", labels.len())));
            }
            l.with_labels(labels)?
        }
        None => l,
    })
}

fn json_str(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

/// Canonical bytes: fixed key order, one bracket per line, zero coefficients and
/// zero brackets omitted.
pub fn emit_algebra(l: &LieAlgebra) -> String {
    let mut out = String::from("{\n");
    let field = match l.field() {
        FieldSpec::Rationals => "\"Q\"".to_string(),
        FieldSpec::PrimeField(p) => format!("{{\"Fp\": {p}}}"),
    };
    out += &format!("  \"field\": {field},\n  \"dim\": {},\n", l.dim());
    if let Some(labels) = l.labels() {
        let ls: Vec<String> = labels.iter().map(|s| json_str(s)).collect();
        out += &format!("  \"labels\": [{}],\n", ls.join(", "));
    }
    let rows: Vec<String> = l
        .upper_entries()
        .filter_map(|(i, j, v)| {
            let terms: BTreeMap<usize, String> =
                v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.to_string())).collect();
            if terms.is_empty() {
                return None;
            }
            let body: Vec<String> = terms.iter().map(|(k, c)| format!("\"{k}\": {}", json_str(c))).collect();
            Some(format!("    {{\"i\": {i}, \"j\": {j}, \"v\": {{{}}}}}", body.join(", ")))
        })
        .collect();
    if rows.is_empty() {
        out += "  \"brackets\": []\n}\n";
    } else {
        out += &format!("  \"brackets\": [\n{}\n  ]\n}}\n", rows.join(",\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use liealg::families::{heisenberg, sl2};

    const SL2: &str = r#"{"field": "Q", "dim": 3, "brackets": [
        {"i": 0, "j": 1, "v": {"0": "-2"}},
        {"i": 0, "j": 2, "v": {"1": "1"}},
        {"i": 1, "j": 2, "v": {"2": "-2"}}
    ]}"#;

    #[test]
    fn sl2_file() {
        let l = parse_algebra(SL2.as_bytes()).unwrap();
        assert_eq!(l.dim(), 3);
        assert!(l.jacobi_residuals().is_empty());
        let named = l.with_labels(vec!["e".into(), "h".into(), "f".into()]).unwrap();
        assert_eq!(named, sl2(FieldSpec::Rationals));
    }

    #[test]
    fn non_canonical_rejected() {
        let f = r#"{"field": "Q", "dim": 2, "brackets": [{"i": 0, "j": 1, "v": {"0": "2/4"}}]}"#;
        match parse_algebra(f.as_bytes()) {
            Err(FormatError::NonCanonicalScalar { path, value, .. }) => {
                assert_eq!(path, "brackets[0].v[\"0\"]");
                assert_eq!(value, "2/4");
            }
            other => panic!("{other:?}"),
        }
        for bad in ["+1", "01", "-0", "1/1", "3/-2", " 1"] {
            let f = format!(r#"{{"field": "Q", "dim": 2, "brackets": [{{"i": 0, "j": 1, "v": {{"0": "{bad}"}}}}]}}"#);
            assert!(matches!(parse_algebra(f.as_bytes()), Err(FormatError::NonCanonicalScalar { .. })), "{bad}");
        }
        let f = r#"{"field": {"Fp": 5}, "dim": 2, "brackets": [{"i": 0, "j": 1, "v": {"0": "5"}}]}"#;
        assert!(matches!(parse_algebra(f.as_bytes()), Err(FormatError::NonCanonicalScalar { .. })));
    }

    #[test]
    fn no_brackets_is_abelian() {
        let l = parse_algebra(br#"{"field": "Q", "dim": 4}"#).unwrap();
        assert!(l.is_abelian());
        assert_eq!(l.dim(), 4);
    }

    #[test]
    fn structural_errors() {
        let dup = r#"{"field": "Q", "dim": 3, "brackets": [{"i": 0, "j": 1, "v": {}}, {"i": 0, "j": 1, "v": {}}]}"#;
        assert!(matches!(parse_algebra(dup.as_bytes()), Err(FormatError::DuplicatePair { i: 0, j: 1, .. })));
        let order = r#"{"field": "Q", "dim": 3, "brackets": [{"i": 1, "j": 0, "v": {}}]}"#;
        assert!(matches!(parse_algebra(order.as_bytes()), Err(FormatError::Field { .. })));
        let syntax = "{\"field\": \"Q\",\n \"dim\": 3,,}";
        match parse_algebra(syntax.as_bytes()) {
            Err(FormatError::Syntax { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        let unknown = r#"{"field": "Q", "dim": 1, "extra": 0}"#;
        assert!(matches!(parse_algebra(unknown.as_bytes()), Err(FormatError::Syntax { .. })));
        let jacobi = SL2.replace(r#"{"2": "-2"}"#, r#"{"2": "-3"}"#);
        assert!(matches!(
            parse_algebra(jacobi.as_bytes()),
            Err(FormatError::Invalid(LieError::JacobiViolation(_)))
        ));
        let fp = r#"{"field": {"Fp": 4}, "dim": 1}"#;
        assert!(matches!(parse_algebra(fp.as_bytes()), Err(FormatError::Field { .. })));
    }

    #[test]
    fn round_trip_is_byte_stable() {
        for l in [sl2(FieldSpec::Rationals), heisenberg(FieldSpec::prime(7).unwrap())] {
            let text = emit_algebra(&l);
            let back = parse_algebra(text.as_bytes()).unwrap();
            assert_eq!(back, l);
            assert_eq!(emit_algebra(&back), text);
        }
        let l = sl2(FieldSpec::Rationals).with_labels(vec!["e".into(), "h".into(), "f\"".into()]).unwrap();
        assert_eq!(parse_algebra(emit_algebra(&l).as_bytes()).unwrap(), l);
    }
}
