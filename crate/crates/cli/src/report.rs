//! Check records and their JSON and text renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    HypothesesNotMet,
    Violated,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::HypothesesNotMet => "hypotheses-not-met",
            Verdict::Violated => "violated",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub id: String,
    /// Short description of the statement being checked.
    pub anchor: String,
    pub hypotheses: BTreeMap<String, bool>,
    pub flags: BTreeMap<String, Value>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub fixture: String,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub data: Value,
    pub checks: Vec<CheckRecord>,
    pub exit_code: i32,
}

impl Report {
    pub fn new(command: &str, fixture: &str, data: Value, checks: Vec<CheckRecord>) -> Self {
        let exit_code = if checks.iter().any(|c| c.verdict == Verdict::Violated) { 2 } else { 0 };
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            fixture: fixture.to_string(),
            data,
            checks,
            exit_code,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "pact {} {}", self.command, self.fixture).unwrap();
        if let Value::Object(map) = &self.data {
            let width = map.keys().map(|k| k.chars().count()).max().unwrap_or(0);
            for (k, v) in map {
                writeln!(out, "  {k:<width$}  {}", inline(v)).unwrap();
            }
        }
        if !self.checks.is_empty() {
            let id_w = self.checks.iter().map(|c| c.id.chars().count()).max().unwrap_or(0);
            let v_w = self.checks.iter().map(|c| c.verdict.as_str().len()).max().unwrap_or(0);
            writeln!(out, "checks:").unwrap();
            for c in &self.checks {
                writeln!(out, "  {:<id_w$}  {:<v_w$}  {}", c.id, c.verdict.as_str(), c.anchor).unwrap();
                if let Some(d) = &c.detail {
                    writeln!(out, "  {:<id_w$}  {d}", "").unwrap();
                }
            }
        }
        out
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// A failure before or outside the checks, rendered in the same envelope.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorReport {
    pub schema_version: u32,
    pub command: String,
    pub error: ErrorBody,
    pub exit_code: i32,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorBody {
    pub kind: &'static str,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub column: Option<usize>,
}
