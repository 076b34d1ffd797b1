use std::fmt::Write as _;

use liealg::{SearchBudget, TriState};
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    True,
    False,
    Unknown,
    Info,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub name: String,
    pub status: Status,
    /// Counted toward the exit code.
    pub checked: bool,
    /// For False verdicts: whether the witness reproduces False when re-run.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub replayed: Option<bool>,
    pub detail: Value,
}

impl Verdict {
    pub fn tri<C: Serialize, W: Serialize>(name: &str, t: &TriState<C, W>, replayed: Option<bool>) -> Self {
        let status = match t {
            TriState::True(_) => Status::True,
            TriState::False(_) => Status::False,
            TriState::Unknown(_) => Status::Unknown,
        };
        Verdict { name: name.into(), status, checked: true, replayed, detail: to_value(t) }
    }

    pub fn check(name: &str, holds: bool, detail: Value) -> Self {
        let status = if holds { Status::True } else { Status::False };
        Verdict { name: name.into(), status, checked: true, replayed: None, detail }
    }

    pub fn info(name: &str, detail: Value) -> Self {
        Verdict { name: name.into(), status: Status::Info, checked: false, replayed: None, detail }
    }

    pub fn unknown(name: &str, reason: impl Into<String>) -> Self {
        Verdict {
            name: name.into(),
            status: Status::Unknown,
            checked: true,
            replayed: None,
            detail: Value::String(reason.into()),
        }
    }
}

pub fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report payloads serialize")
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input_digest: Option<String>,
    pub seed: u64,
    pub budget: SearchBudget,
    pub verdicts: Vec<Verdict>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut s = String::from("sha256:");
    for b in Sha256::digest(bytes) {
        write!(s, "{b:02x}").expect("writing to a string");
    }
    s
}

impl Report {
    /// 1 when a checked verdict is False or a witness fails to replay, otherwise 2
    /// when any checked verdict is Unknown, otherwise 0.
    pub fn exit_code(&self) -> i32 {
        let checked = || self.verdicts.iter().filter(|v| v.checked);
        if checked().any(|v| v.status == Status::False || v.replayed == Some(false)) {
            1
        } else if checked().any(|v| v.status == Status::Unknown) {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "command: {}", self.command.join(" ")).ok();
        if let Some(d) = &self.input_digest {
            writeln!(s, "input: {d}").ok();
        }
        for v in &self.verdicts {
            let status = format!("{:?}", v.status);
            let replay = match v.replayed {
                Some(true) => " (witness replayed)",
                Some(false) => " (WITNESS DOES NOT REPLAY)",
                None => "",
            };
            if v.status == Status::Info {
                writeln!(s, "{}: {}", v.name, render_detail(&v.detail)).ok();
            } else {
                writeln!(s, "{}: {status}{replay}", v.name).ok();
                writeln!(s, "  {}", render_detail(&v.detail)).ok();
            }
        }
        s
    }
}

fn render_detail(v: &Value) -> String {
    if let Some(rows) = v.get("rows").and_then(Value::as_array) {
        let lines: Vec<String> = rows
            .iter()
            .map(|r| {
                let f = |k: &str| r.get(k).and_then(Value::as_str).unwrap_or("");
                format!("{:<8} {} / {}: {}", f("status"), f("fixture"), f("check"), f("detail"))
            })
            .collect();
        return format!("{}\n  counts: {}", lines.join("\n  "), v.get("counts").cloned().unwrap_or_default());
    }
    match v {
        Value::Object(m) if m.contains_key("verdict") => m.get("detail").map_or(String::new(), |d| d.to_string()),
        other => other.to_string(),
    }
}
