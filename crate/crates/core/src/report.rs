//! Verdict records shared by every checker.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Certified,
    Violated,
    NotApplicable,
    /// Every hypothesis of a claimed implication holds but its conclusion fails.
    Counterexample,
}

impl Verdict {
    pub fn is_failure(self) -> bool {
        matches!(self, Verdict::Violated | Verdict::Counterexample)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Holds => "holds",
            Verdict::Certified => "certified",
            Verdict::Violated => "violated",
            Verdict::NotApplicable => "not-applicable",
            Verdict::Counterexample => "counterexample",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Info,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub name: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub values: BTreeMap<String, Value>,
}

impl Entry {
    pub fn new(name: impl Into<String>, status: Status) -> Self {
        Self { name: name.into(), status, values: BTreeMap::new() }
    }

    pub fn pass_if(name: impl Into<String>, ok: bool) -> Self {
        Self::new(name, if ok { Status::Pass } else { Status::Fail })
    }

    pub fn with(mut self, key: &str, v: impl Serialize) -> Self {
        self.values.insert(key.to_string(), serde_json::to_value(v).expect("serializable"));
        self
    }

    /// Records a value through its `Display` form (used for rationals).
    pub fn with_str(mut self, key: &str, v: impl fmt::Display) -> Self {
        self.values.insert(key.to_string(), Value::String(v.to_string()));
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub verdict: Verdict,
    pub entries: Vec<Entry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(check: impl Into<String>, verdict: Verdict) -> Self {
        Self { check: check.into(), verdict, entries: Vec::new(), notes: Vec::new() }
    }

    /// Builds a report whose verdict is `pass` iff no entry failed.
    pub fn from_entries(check: impl Into<String>, entries: Vec<Entry>, pass: Verdict) -> Self {
        let failed = entries.iter().any(|e| e.status == Status::Fail);
        Self { check: check.into(), verdict: if failed { Verdict::Violated } else { pass }, entries, notes: Vec::new() }
    }

    pub fn push(&mut self, e: Entry) {
        self.entries.push(e);
    }

    pub fn note(mut self, n: impl Into<String>) -> Self {
        self.notes.push(n.into());
        self
    }

    pub fn entry(&self, name: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// Multi-line human summary.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}: {}\n", self.check, self.verdict);
        for e in &self.entries {
            let tag = match e.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Info => "info",
            };
            let vals: Vec<String> = e
                .values
                .iter()
                .map(|(k, v)| match v {
                    Value::String(s) => format!("{k}={s}"),
                    other => format!("{k}={other}"),
                })
                .collect();
            out.push_str(&format!("  [{tag}] {} {}\n", e.name, vals.join(" ")));
        }
        for n in &self.notes {
            out.push_str(&format!("  note: {n}\n"));
        }
        out
    }
}
