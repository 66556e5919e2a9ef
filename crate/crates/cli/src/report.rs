//! Report rows, the JSON document written to `--output`, and the plain table
//! printed to stdout.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::config::RunConfig;
use crate::CliError;

/// How a row's computed value is compared with the expected one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    /// `|computed - expected| <= tol`.
    Equal,
    /// `computed >= expected - tol`.
    AtLeast,
    /// `computed <= expected + tol`.
    AtMost,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub claim: String,
    pub computed: f64,
    pub expected: f64,
    pub diff: f64,
    pub tol: f64,
    pub check: Check,
    pub pass: bool,
}

impl Row {
    pub fn new(claim: impl Into<String>, computed: f64, expected: f64, tol: f64, check: Check) -> Self {
        let diff = computed - expected;
        let pass = match check {
            Check::Equal => diff.abs() <= tol,
            Check::AtLeast => diff >= -tol,
            Check::AtMost => diff <= tol,
        };
        Row {
            claim: claim.into(),
            computed,
            expected,
            diff,
            tol,
            check,
            pass,
        }
    }

    pub fn equal(claim: impl Into<String>, computed: f64, expected: f64, tol: f64) -> Self {
        Self::new(claim, computed, expected, tol, Check::Equal)
    }

    pub fn flag(claim: impl Into<String>, ok: bool) -> Self {
        Self::equal(claim, if ok { 1.0 } else { 0.0 }, 1.0, 0.0)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub config: RunConfig,
    pub rows: Vec<Row>,
    /// Command-specific payload: verdicts, witnesses, counterexample series.
    pub details: serde_json::Value,
}

impl Report {
    pub fn new(command: &str, config: &RunConfig) -> Self {
        Report {
            command: command.to_string(),
            config: config.clone(),
            rows: Vec::new(),
            details: serde_json::Value::Null,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn to_json(&self) -> Result<String, CliError> {
        let mut s = serde_json::to_string_pretty(self).map_err(|e| CliError::Io(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        std::fs::write(path, self.to_json()?).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
    }

    pub fn table(&self) -> String {
        let width = self.rows.iter().map(|r| r.claim.len()).max().unwrap_or(5).max(5);
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<width$}  {:>16}  {:>16}  {:>10}  {:>8}  status",
            "claim", "computed", "expected", "diff", "tol"
        );
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:<width$}  {:>16}  {:>16}  {:>10.2e}  {:>8.0e}  {}",
                r.claim,
                num(r.computed),
                num(r.expected),
                r.diff.abs(),
                r.tol,
                if r.pass { "pass" } else { "FAIL" }
            );
        }
        out
    }
}

fn num(x: f64) -> String {
    if x.is_finite() && x.abs() < 1e6 {
        format!("{x:.10}")
    } else {
        format!("{x:e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_checks() {
        assert!(Row::equal("a", 1.0, 1.0 + 1e-9, 1e-8).pass);
        assert!(!Row::equal("a", 1.0, 1.1, 1e-8).pass);
        assert!(Row::new("b", 0.0, 0.0, 0.0, Check::AtLeast).pass);
        assert!(!Row::new("b", -1.0, 0.0, 0.5, Check::AtLeast).pass);
        assert!(Row::new("c", 0.4, 0.5, 0.0, Check::AtMost).pass);
        assert!(!Row::flag("d", false).pass);
    }

    #[test]
    fn table_lists_each_row() {
        let mut r = Report::new("x", &RunConfig::default());
        r.rows.push(Row::equal("alpha", 0.5, 0.5, 1e-10));
        r.rows.push(Row::equal("beta", 0.4, 0.5, 1e-10));
        let t = r.table();
        assert_eq!(t.lines().count(), 3);
        assert!(t.contains("FAIL") && t.contains("pass"));
        assert!(!r.all_pass());
    }
}
