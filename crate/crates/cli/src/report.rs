//! Command reports: ordered checks plus named facts, rendered as text or JSON.

use std::fmt::Write as _;
use std::time::Instant;

use hilbext_core::check::{Check, Verification};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub status: Status,
    pub residual: Option<f64>,
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub detail: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Fact {
    pub key: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub scenario: Option<String>,
    pub seed: u64,
    pub checks: Vec<CheckLine>,
    pub facts: Vec<Fact>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip)]
    timings: bool,
}

/// Violations listed per check before the rest is summarized.
const MAX_DETAIL: usize = 5;

impl Report {
    pub fn new(command: &str, scenario: Option<&str>, seed: u64, timings: bool) -> Self {
        Self {
            command: command.into(),
            scenario: scenario.map(Into::into),
            seed,
            checks: Vec::new(),
            facts: Vec::new(),
            notes: Vec::new(),
            timings,
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn fact(&mut self, key: impl Into<String>, value: impl ToString) {
        self.facts.push(Fact {
            key: key.into(),
            value: value.to_string(),
        });
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// A check without a numeric residual.
    pub fn verdict(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) {
        let detail = detail.into();
        self.checks.push(CheckLine {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            residual: None,
            tolerance: None,
            detail: if detail.is_empty() { Vec::new() } else { vec![detail] },
            runtime_ms: None,
        });
    }

    /// Compare an expected value with the measured one.
    pub fn expect<T: PartialEq + std::fmt::Debug>(&mut self, name: &str, expected: Option<T>, actual: T) {
        if let Some(e) = expected {
            let ok = e == actual;
            let detail = if ok { String::new() } else { format!("expected {e:?}, found {actual:?}") };
            self.verdict(format!("expected.{name}"), ok, detail);
        }
    }

    pub fn push_check(&mut self, prefix: &str, check: &Check, runtime_ms: Option<f64>) {
        let mut detail: Vec<String> = check.violations.iter().take(MAX_DETAIL).cloned().collect();
        if check.violations.len() > MAX_DETAIL {
            detail.push(format!("... {} more", check.violations.len() - MAX_DETAIL));
        }
        detail.extend(check.notes.iter().cloned());
        self.checks.push(CheckLine {
            name: if prefix.is_empty() { check.name.clone() } else { format!("{prefix}.{}", check.name) },
            status: if check.passed() { Status::Pass } else { Status::Fail },
            residual: Some(check.max_residual),
            tolerance: Some(check.tolerance),
            detail,
            runtime_ms,
        });
    }

    /// Run `f`, append its checks under `prefix`, and return its verdict.
    pub fn stage(&mut self, prefix: &str, f: impl FnOnce() -> Verification) -> bool {
        let start = Instant::now();
        let v = f();
        let ms = self.timings.then(|| start.elapsed().as_secs_f64() * 1e3);
        for c in &v.checks {
            self.push_check(prefix, c, ms);
        }
        v.passed()
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.render_text(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
                s.push('\n');
                s
            }
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        if let Some(s) = &self.scenario {
            let _ = writeln!(out, "scenario: {s}");
        }
        let _ = writeln!(out, "seed: {}", self.seed);
        if !self.checks.is_empty() {
            out.push('\n');
            let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
            for c in &self.checks {
                let status = match c.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                };
                let mut line = format!("{status}  {:<width$}", c.name);
                if let (Some(r), Some(t)) = (c.residual, c.tolerance) {
                    let _ = write!(line, "  residual {r:.3e}  tol {t:.1e}");
                }
                if let Some(ms) = c.runtime_ms {
                    let _ = write!(line, "  {ms:.1} ms");
                }
                out.push_str(line.trim_end());
                out.push('\n');
                for d in &c.detail {
                    let _ = writeln!(out, "      {d}");
                }
            }
        }
        if !self.facts.is_empty() {
            out.push('\n');
            for f in &self.facts {
                let _ = writeln!(out, "{} = {}", f.key, f.value);
            }
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        let failed = self.checks.iter().filter(|c| c.status == Status::Fail).count();
        let _ = writeln!(
            out,
            "\nsummary: {} passed, {failed} failed",
            self.checks.len() - failed
        );
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Text => "txt",
            Format::Json => "json",
        }
    }
}
