//! Verification outcomes shared by the `verify_*` routines.

use serde::Serialize;

/// Result of one named check: worst residual seen and every violation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub violations: Vec<String>,
    /// Informational lines that do not affect the verdict.
    pub notes: Vec<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            max_residual: 0.0,
            tolerance,
            violations: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// Record a residual; exceeding the tolerance logs `what` as a violation.
    pub fn record(&mut self, residual: f64, what: impl FnOnce() -> String) {
        if residual > self.max_residual || residual.is_nan() {
            self.max_residual = residual;
        }
        if residual.is_nan() || residual > self.tolerance {
            self.violations.push(format!("{} (residual {:.3e})", what(), residual));
        }
    }

    pub fn fail(&mut self, what: impl Into<String>) {
        self.violations.push(what.into());
    }

    pub fn note(&mut self, what: impl Into<String>) {
        self.notes.push(what.into());
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// An ordered collection of checks.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Verification {
    pub checks: Vec<Check>,
}

impl Verification {
    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.max_residual).fold(0.0, f64::max)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn violations(&self) -> impl Iterator<Item = (&str, &str)> {
        self.checks
            .iter()
            .flat_map(|c| c.violations.iter().map(move |v| (c.name.as_str(), v.as_str())))
    }

    pub fn extend(&mut self, other: Verification) {
        self.checks.extend(other.checks);
    }
}
