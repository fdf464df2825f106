//! Pass/fail reports produced by the verification suites.

use std::fmt::Write;

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// What was checked, e.g. how many pairs were swept.
    pub detail: String,
    /// First counterexample, in canonical element order.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed: true,
            detail: detail.into(),
            witness: None,
        }
    }

    pub fn fail(
        name: impl Into<String>,
        detail: impl Into<String>,
        witness: impl Into<String>,
    ) -> Self {
        Check {
            name: name.into(),
            passed: false,
            detail: detail.into(),
            witness: Some(witness.into()),
        }
    }

    /// Passes iff `witness` is `None`.
    pub fn from_witness(
        name: impl Into<String>,
        detail: impl Into<String>,
        witness: Option<String>,
    ) -> Self {
        match witness {
            None => Check::pass(name, detail),
            Some(w) => Check::fail(name, detail, w),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// One line per check, witnesses indented below failures.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "== {} ==", self.title);
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "[{status}] {} ({})", c.name, c.detail);
            if let Some(w) = &c.witness {
                let _ = writeln!(out, "       witness: {w}");
            }
        }
        out
    }
}
