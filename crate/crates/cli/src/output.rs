//! Run reports: one JSON document (schema "1") or a plain-text table.

use serde::Serialize;
use serde_json::Value;
use topepair_core::{Report, Status};

pub const SCHEMA: &str = "1";

#[derive(Serialize)]
pub struct InputInfo {
    pub path: String,
    pub format: &'static str,
    pub sha256: String,
}

#[derive(Serialize)]
pub struct CheckOut {
    pub name: String,
    pub status: &'static str,
    pub detail: String,
}

#[derive(Serialize)]
pub struct RunReport {
    pub schema: &'static str,
    pub tool: &'static str,
    pub version: &'static str,
    pub command: Vec<String>,
    pub input: InputInfo,
    pub status: &'static str,
    pub checks: Vec<CheckOut>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub data: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

/// Process exit status for a finished run.
pub fn exit_code(report: &Report) -> i32 {
    if !report.passed() {
        1
    } else if report.any_skipped() {
        3
    } else {
        0
    }
}

fn overall(report: &Report) -> &'static str {
    match exit_code(report) {
        0 => "pass",
        1 => "fail",
        _ => "skipped",
    }
}

impl RunReport {
    pub fn new(command: Vec<String>, input: InputInfo, report: &Report, data: Value) -> RunReport {
        RunReport {
            schema: SCHEMA,
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command,
            input,
            status: overall(report),
            checks: report
                .checks
                .iter()
                .map(|c| CheckOut { name: c.name.clone(), status: c.status.as_str(), detail: c.detail.clone() })
                .collect(),
            data,
            elapsed_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} {}: {}\ninput {} ({}, sha256 {})\n",
            self.tool,
            self.version,
            self.command.join(" "),
            self.input.path,
            self.input.format,
            &self.input.sha256[..16]
        );
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            out.push_str(&format!("{:<7} {:<width$}  {}\n", c.status, c.name, c.detail));
        }
        if let Value::Object(map) = &self.data {
            for (k, v) in map {
                out.push_str(&format!("{k}: {v}\n"));
            }
        }
        if let Some(ms) = self.elapsed_ms {
            out.push_str(&format!("elapsed {ms} ms\n"));
        }
        out.push_str(&format!("status: {}\n", self.status));
        out
    }
}

/// Prefixes every check name, for combined runs.
pub fn prefixed(prefix: &str, report: Report) -> Report {
    let mut out = Report::new();
    for c in report.checks {
        let name = format!("{prefix}/{}", c.name);
        match c.status {
            Status::Skipped => out.skip(name, c.detail),
            s => out.push(name, s == Status::Pass, c.detail),
        }
    }
    out
}
