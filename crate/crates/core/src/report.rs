//! Structured PASS/FAIL reports.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::io::Encode;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        })
    }
}

/// One named check. `residual` is the canonical encoding of whatever failed
/// to vanish; `trial` only orders repeated checks of the same name.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub residual: Option<Value>,
    pub notes: String,
    #[serde(skip)]
    pub trial: usize,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Pass,
            residual: None,
            notes: String::new(),
            trial: 0,
        }
    }

    pub fn fail(name: impl Into<String>, residual: Option<Value>) -> Self {
        Check {
            name: name.into(),
            status: Status::Fail,
            residual,
            notes: String::new(),
            trial: 0,
        }
    }

    pub fn skip(name: impl Into<String>, why: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Skip,
            residual: None,
            notes: why.into(),
            trial: 0,
        }
    }

    /// PASS if `residual` vanishes, FAIL carrying its encoding otherwise.
    pub fn vanishing<T: Encode>(name: impl Into<String>, residual: &T) -> Self {
        if residual.is_zero_value() {
            Check::pass(name)
        } else {
            Check::fail(name, Some(residual.encode()))
        }
    }

    pub fn from_bool(name: impl Into<String>, ok: bool) -> Self {
        if ok {
            Check::pass(name)
        } else {
            Check::fail(name, None)
        }
    }

    pub fn with_notes(mut self, notes: impl Into<String>) -> Self {
        self.notes = notes.into();
        self
    }

    pub fn with_trial(mut self, trial: usize) -> Self {
        self.trial = trial;
        self
    }

    pub fn is_pass(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn is_fail(&self) -> bool {
        self.status == Status::Fail
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    /// Prefix every check name with `scope.`.
    pub fn scoped(mut self, scope: &str) -> Report {
        for c in &mut self.checks {
            c.name = format!("{scope}.{}", c.name);
        }
        self
    }

    /// Deterministic order: by name, then trial index.
    pub fn sorted(mut self) -> Report {
        self.checks
            .sort_by(|a, b| a.name.cmp(&b.name).then(a.trial.cmp(&b.trial)));
        self
    }

    pub fn passed(&self) -> bool {
        !self.checks.iter().any(Check::is_fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.is_fail())
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn status_of(&self, name: &str) -> Option<Status> {
        self.get(name).map(|c| c.status)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            s.push_str(&format!("{} {}", c.status, c.name));
            if !c.notes.is_empty() {
                s.push_str(&format!("  ({})", c.notes));
            }
            s.push('\n');
            if let Some(r) = &c.residual {
                s.push_str(&format!("    residual: {r}\n"));
            }
        }
        let fails = self.failures().count();
        s.push_str(&format!(
            "{} checks, {} failed\n",
            self.checks.len(),
            fails
        ));
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_is_by_name_then_trial() {
        let mut r = Report::new();
        r.push(Check::pass("b").with_trial(1));
        r.push(Check::pass("b").with_trial(0));
        r.push(Check::fail("a", None));
        let r = r.sorted();
        let order: Vec<(String, usize)> = r.checks.iter().map(|c| (c.name.clone(), c.trial)).collect();
        assert_eq!(order, [("a".into(), 0), ("b".into(), 0), ("b".into(), 1)]);
        assert!(!r.passed());
    }

    #[test]
    fn json_shape() {
        let mut r = Report::new();
        r.push(Check::pass("x").with_notes("n"));
        let v = r.to_json();
        assert_eq!(v["checks"][0]["status"], "PASS");
        assert_eq!(v["checks"][0]["notes"], "n");
        assert!(v["checks"][0]["residual"].is_null());
    }
}
