//! Pass/fail reports with symbolic witnesses.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// The check's hypotheses do not hold, so nothing is asserted.
    NotApplicable,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::NotApplicable => "n/a",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    /// A nonzero expression, or a pair of unequal sides, explaining a failure.
    pub witness: Option<String>,
    pub hypothesis_flags: Vec<(String, bool)>,
    pub note: Option<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fail
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub title: String,
    pub checks: Vec<Check>,
}

impl AxiomReport {
    pub fn new(title: impl Into<String>) -> AxiomReport {
        AxiomReport { title: title.into(), checks: Vec::new() }
    }

    /// Conjunction of all checks; not-applicable checks count as passing.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn verdict(&self, name: &str) -> Option<Verdict> {
        self.check(name).map(|c| c.verdict)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.verdict == Verdict::Fail)
    }

    /// Records a check that fails iff `witness` is present.
    pub fn record(&mut self, name: impl Into<String>, witness: Option<String>) -> &mut Check {
        let verdict = if witness.is_some() { Verdict::Fail } else { Verdict::Pass };
        self.push(Check { name: name.into(), verdict, witness, hypothesis_flags: Vec::new(), note: None })
    }

    pub fn record_bool(&mut self, name: impl Into<String>, ok: bool, witness: impl Into<String>) -> &mut Check {
        self.record(name, if ok { None } else { Some(witness.into()) })
    }

    pub fn not_applicable(&mut self, name: impl Into<String>, note: impl Into<String>) -> &mut Check {
        self.push(Check {
            name: name.into(),
            verdict: Verdict::NotApplicable,
            witness: None,
            hypothesis_flags: Vec::new(),
            note: Some(note.into()),
        })
    }

    pub fn push(&mut self, check: Check) -> &mut Check {
        self.checks.push(check);
        self.checks.last_mut().expect("just pushed")
    }

    pub fn extend(&mut self, other: AxiomReport) {
        self.checks.extend(other.checks);
    }
}

impl Check {
    pub fn with_flags(&mut self, flags: &[(&str, bool)]) -> &mut Check {
        self.hypothesis_flags.extend(flags.iter().map(|(n, v)| (n.to_string(), *v)));
        self
    }

    pub fn with_note(&mut self, note: impl Into<String>) -> &mut Check {
        self.note = Some(note.into());
        self
    }
}

/// Collects the first counterexample over a family of cases.
pub(crate) struct Probe {
    witness: Option<String>,
}

impl Probe {
    pub(crate) fn new() -> Probe {
        Probe { witness: None }
    }

    /// Records `describe()` unless `ok` or a witness is already held.
    pub(crate) fn expect(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        if !ok && self.witness.is_none() {
            self.witness = Some(describe());
        }
    }

    pub(crate) fn failed(&self) -> bool {
        self.witness.is_some()
    }

    pub(crate) fn finish(self) -> Option<String> {
        self.witness
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn not_applicable_counts_as_passing() {
        let mut r = AxiomReport::new("t");
        r.record("a", None);
        r.not_applicable("b", "no");
        assert!(r.passed());
        r.record_bool("c", false, "w").with_flags(&[("f", true)]);
        assert!(!r.passed());
        assert_eq!(r.verdict("c"), Some(Verdict::Fail));
        assert_eq!(r.check("c").unwrap().hypothesis_flags, [("f".to_string(), true)]);
        assert_eq!(r.failures().count(), 1);
    }

    #[test]
    fn probe_keeps_first_witness() {
        let mut p = Probe::new();
        p.expect(true, || "never".into());
        p.expect(false, || "first".into());
        p.expect(false, || "second".into());
        assert_eq!(p.finish().as_deref(), Some("first"));
    }
}
