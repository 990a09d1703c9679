//! Pass/fail reports shared by the ring, modular and metric-group validators.

use serde::{Deserialize, Serialize};
use std::fmt;

/// Outcome of one named axiom check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// First violating index tuple, when there is one.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

impl Check {
    pub fn pass(name: &str) -> Self {
        Self { name: name.to_owned(), passed: true, witness: None, detail: None }
    }

    pub fn fail(name: &str, witness: Option<Vec<usize>>, detail: impl Into<String>) -> Self {
        Self { name: name.to_owned(), passed: false, witness, detail: Some(detail.into()) }
    }

    /// Pass when `violation` is `None`, otherwise fail with its witness and message.
    pub fn from_violation(name: &str, violation: Option<(Vec<usize>, String)>) -> Self {
        match violation {
            None => Self::pass(name),
            Some((w, d)) => Self::fail(name, Some(w), d),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Whether the named check is present and failed.
    pub fn failed(&self, name: &str) -> bool {
        self.get(name).is_some_and(|c| !c.passed)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(f, "[{}] {}", if c.passed { "pass" } else { "FAIL" }, c.name)?;
            if let Some(w) = &c.witness {
                write!(f, " at {w:?}")?;
            }
            if let Some(d) = &c.detail {
                write!(f, ": {d}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
