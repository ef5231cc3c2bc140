//! Structured pass/fail records.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::torus::TorusGeometry;

pub const SCHEMA_VERSION: u32 = 1;

/// Whether a residual must stay below the tolerance or rise above it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Bound {
    Upper,
    Lower,
}

/// One named check with its measured residual.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check: String,
    pub params: BTreeMap<String, Value>,
    pub max_residual: f64,
    pub tolerance: f64,
    pub bound: Bound,
    pub pass: bool,
}

impl CheckResult {
    /// Passes when `residual <= tolerance`.
    pub fn at_most(check: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Self::build(check.into(), residual, tolerance, Bound::Upper)
    }

    /// Passes when `residual > tolerance` (detection checks).
    pub fn at_least(check: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Self::build(check.into(), residual, tolerance, Bound::Lower)
    }

    fn build(check: String, residual: f64, tolerance: f64, bound: Bound) -> Self {
        // NaN or infinite residuals are reported as failures with a finite sentinel.
        let (max_residual, pass) = if residual.is_finite() {
            let r = residual.abs();
            let pass = match bound {
                Bound::Upper => r <= tolerance,
                Bound::Lower => r > tolerance,
            };
            (r, pass)
        } else {
            (f64::MAX, false)
        };
        Self {
            check,
            params: BTreeMap::new(),
            max_residual,
            tolerance,
            bound,
            pass,
        }
    }

    pub fn with_param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    /// Forces a failure, e.g. when a precondition of the check did not hold.
    pub fn failed(mut self) -> Self {
        self.pass = false;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeometrySummary {
    pub a: f64,
    pub b: f64,
    pub h: f64,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none", default)]
    pub n: Option<u64>,
}

impl From<&TorusGeometry> for GeometrySummary {
    fn from(g: &TorusGeometry) -> Self {
        Self {
            a: g.a(),
            b: g.b(),
            h: g.h(),
            n: g.n(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub tool_version: String,
    pub geometry: GeometrySummary,
    pub checks: Vec<CheckResult>,
    pub overall_pass: bool,
    pub timestamp: String,
}

impl VerificationReport {
    pub fn new(geometry: &TorusGeometry, checks: Vec<CheckResult>) -> Self {
        let overall_pass = checks.iter().all(|c| c.pass);
        Self {
            schema: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            geometry: geometry.into(),
            checks,
            overall_pass,
            timestamp: chrono::Utc::now().format("%Y-%m-%dT%H:%M:%SZ").to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is always serializable")
    }

    /// Plain-text table, one line per check.
    pub fn render_table(&self) -> String {
        let width = self
            .checks
            .iter()
            .map(|c| c.check.len())
            .max()
            .unwrap_or(5)
            .max(5);
        let mut out = String::new();
        let g = &self.geometry;
        let n = g.n.map_or_else(|| "-".to_string(), |n| n.to_string());
        let _ = writeln!(out, "geometry a={} b={} h={} N={}", g.a, g.b, g.h, n);
        let _ = writeln!(
            out,
            "{:<6}{:<width$}  {:>12}  {:>9}",
            "", "check", "residual", "tolerance"
        );
        for c in &self.checks {
            let status = if c.pass { "PASS" } else { "FAIL" };
            let cmp = match c.bound {
                Bound::Upper => "<=",
                Bound::Lower => "> ",
            };
            let _ = writeln!(
                out,
                "{status:<6}{:<width$}  {:>12.3e}  {cmp}{:>7.0e}",
                c.check, c.max_residual, c.tolerance
            );
        }
        let passed = self.checks.iter().filter(|c| c.pass).count();
        let _ = writeln!(
            out,
            "{} / {} checks passed: {}",
            passed,
            self.checks.len(),
            if self.overall_pass { "OK" } else { "FAILED" }
        );
        out
    }
}
