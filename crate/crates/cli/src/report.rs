//! Machine-readable reports.
//!
//! Field order is fixed by the struct definitions and hypothesis flags keep
//! their evaluation order, so serializing the same report twice gives the
//! same bytes.

use std::fmt::Write;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use sasaki_core::report::{AxiomReport, Check, Verdict};

pub const REPORT_SCHEMA_VERSION: u32 = 1;
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

const TRUNCATION_MARKER: &str = "… [truncated]";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SubjectInfo {
    /// `catalog` or `manifest`.
    pub source: String,
    pub id: String,
    pub label: String,
    /// `contact` or `symplectic`.
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suite: Option<String>,
    pub name: String,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub truncated: bool,
    #[serde(skip_serializing_if = "Vec::is_empty", serialize_with = "ordered_flags")]
    pub hypothesis_flags: Vec<(String, bool)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    /// Provenance of an expected value.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub origin: Option<String>,
}

fn ordered_flags<S: Serializer>(flags: &[(String, bool)], s: S) -> Result<S::Ok, S::Error> {
    let mut map = s.serialize_map(Some(flags.len()))?;
    for (k, v) in flags {
        map.serialize_entry(k, v)?;
    }
    map.end()
}

/// One `key = value` line of a table (coefficients, classifications).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Row {
    pub key: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suite: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub connection: Option<String>,
    pub subject: SubjectInfo,
    pub engine_version: String,
    pub checks: Vec<CheckRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub table: Vec<Row>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
    pub exit: i32,
}

impl CheckRecord {
    pub fn from_check(suite: Option<&str>, c: &Check) -> CheckRecord {
        CheckRecord {
            suite: suite.map(str::to_string),
            name: c.name.clone(),
            verdict: c.verdict.as_str().to_string(),
            witness: c.witness.clone(),
            truncated: false,
            hypothesis_flags: c.hypothesis_flags.clone(),
            note: c.note.clone(),
            origin: None,
        }
    }

    pub fn failed(&self) -> bool {
        self.verdict == Verdict::Fail.as_str()
    }
}

impl Report {
    pub fn new(command: &str, subject: SubjectInfo) -> Report {
        Report {
            schema_version: REPORT_SCHEMA_VERSION,
            command: command.to_string(),
            suite: None,
            connection: None,
            subject,
            engine_version: ENGINE_VERSION.to_string(),
            checks: Vec::new(),
            table: Vec::new(),
            elapsed_ms: None,
            exit: 0,
        }
    }

    pub fn add_report(&mut self, suite: Option<&str>, r: &AxiomReport) {
        self.checks.extend(r.checks.iter().map(|c| CheckRecord::from_check(suite, c)));
    }

    pub fn add_row(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.table.push(Row { key: key.into(), value: value.into() });
    }

    /// Sets `exit` from the verdicts: 1 if any check failed, else 0.
    pub fn finish(&mut self) {
        self.exit = i32::from(self.checks.iter().any(CheckRecord::failed));
    }

    /// Shortens witnesses longer than `limit` characters and marks them.
    pub fn truncate_witnesses(&mut self, limit: usize) {
        for c in &mut self.checks {
            if let Some(w) = &c.witness {
                if w.chars().count() > limit {
                    let mut short: String = w.chars().take(limit).collect();
                    short.push_str(TRUNCATION_MARKER);
                    c.witness = Some(short);
                    c.truncated = true;
                }
            }
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut head = format!("{} on {}", self.command, self.subject.label);
        if let Some(s) = &self.suite {
            let _ = write!(head, ", suite {s}");
        }
        if let Some(c) = &self.connection {
            let _ = write!(head, ", connection {c}");
        }
        let _ = writeln!(out, "{head}");
        let mut suite: Option<&str> = None;
        for c in &self.checks {
            if c.suite.as_deref() != suite {
                suite = c.suite.as_deref();
                if let Some(s) = suite {
                    let _ = writeln!(out, "[{s}]");
                }
            }
            let verdict = if c.failed() { "FAIL" } else { c.verdict.as_str() };
            let _ = writeln!(out, "  {verdict:<4}  {}", c.name);
            if let Some(w) = &c.witness {
                let _ = writeln!(out, "        witness: {w}");
            }
            if let Some(n) = &c.note {
                let _ = writeln!(out, "        note: {n}");
            }
            if let Some(o) = &c.origin {
                let _ = writeln!(out, "        origin: {o}");
            }
            if !c.hypothesis_flags.is_empty() {
                let flags: Vec<String> = c.hypothesis_flags.iter().map(|(k, v)| format!("{k}={v}")).collect();
                let _ = writeln!(out, "        flags: {}", flags.join(", "));
            }
        }
        for row in &self.table {
            let _ = writeln!(out, "  {} = {}", row.key, row.value);
        }
        if let Some(ms) = self.elapsed_ms {
            let _ = writeln!(out, "elapsed {ms} ms");
        }
        let failed = self.checks.iter().filter(|c| c.failed()).count();
        let _ = writeln!(out, "{} checks, {failed} failed, exit {}", self.checks.len(), self.exit);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn subject() -> SubjectInfo {
        SubjectInfo {
            source: String::from("catalog"),
            id: String::from("s3"),
            label: String::from("s3"),
            kind: String::from("contact"),
            path: None,
        }
    }

    #[test]
    fn empty_report_exits_zero() {
        let mut r = Report::new("check", subject());
        r.finish();
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["checks"], serde_json::json!([]));
        assert_eq!(v["exit"], 0);
    }

    #[test]
    fn flags_keep_their_order_and_truncation_is_marked() {
        let mut a = AxiomReport::new("t");
        a.record("long", Some("x".repeat(50))).with_flags(&[("z", true), ("a", false)]);
        a.not_applicable("skipped", "no");
        let mut r = Report::new("check", subject());
        r.add_report(Some("suite"), &a);
        r.truncate_witnesses(10);
        r.finish();
        let json = r.to_json();
        assert!(json.find("\"z\"").unwrap() < json.find("\"a\"").unwrap());
        assert_eq!(r.checks[0].witness.as_deref(), Some(&*format!("{}{TRUNCATION_MARKER}", "x".repeat(10))));
        assert!(r.checks[0].truncated);
        assert_eq!(r.exit, 1);
        assert_eq!(json, r.clone().to_json());
        assert!(r.to_text().contains("FAIL  long"));
    }
}
