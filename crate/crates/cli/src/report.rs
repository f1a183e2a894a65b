//! Command results: a human table on stdout and an optional JSON report.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use anyhow::{Context, Result};
use hopfo_core::report::VerificationReport;
use hopfo_core::{FieldMatrix, Scalar};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::workspace::export_matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// A computed value rather than a check; never affects the exit status.
    Info,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub name: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub dims: BTreeMap<String, Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    pub timing_ms: f64,
}

impl Row {
    pub fn new(name: impl Into<String>, status: Status) -> Self {
        Row { name: name.into(), status, dims: BTreeMap::new(), detail: None, witness: None, timing_ms: 0.0 }
    }

    pub fn check(name: impl Into<String>, passed: bool) -> Self {
        Self::new(name, if passed { Status::Pass } else { Status::Fail })
    }

    pub fn info(name: impl Into<String>) -> Self {
        Self::new(name, Status::Info)
    }

    pub fn dim(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.dims.insert(key.to_string(), value.into());
        self
    }

    pub fn detail(mut self, text: impl Into<String>) -> Self {
        self.detail = Some(text.into());
        self
    }

    pub fn witness(mut self, w: Option<Value>) -> Self {
        self.witness = w;
        self
    }

    pub fn timed(mut self, since: Instant) -> Self {
        self.timing_ms = since.elapsed().as_secs_f64() * 1e3;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub characteristic: Option<u64>,
    pub passed: bool,
    pub checks: Vec<Row>,
}

impl Report {
    pub fn new(command: Vec<String>, characteristic: Option<u64>) -> Self {
        Report { command, characteristic, passed: true, checks: Vec::new() }
    }

    pub fn push(&mut self, row: Row) {
        self.passed &= row.status != Status::Fail;
        self.checks.push(row);
    }

    /// One row per named check of a core verification report.
    pub fn extend_verification(&mut self, prefix: &str, v: &VerificationReport, since: Instant) {
        for c in &v.checks {
            let name = if prefix.is_empty() { c.name.clone() } else { format!("{prefix}{}", c.name) };
            let mut row = Row::check(name, c.passed).timed(since);
            if let Some(w) = c.witness {
                row = row.dim("witness_index", w);
            }
            self.push(row);
        }
    }

    pub fn print(&self, show_witness: bool) {
        let width = self.checks.iter().map(|r| r.name.chars().count()).max().unwrap_or(0).max(10);
        for r in &self.checks {
            let status = match r.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Info => "    ",
            };
            let dims: Vec<String> = r.dims.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let mut line = format!("{:<width$}  {status}  {}", r.name, dims.join(" "));
            if let Some(d) = &r.detail {
                line.push_str("  ");
                line.push_str(d);
            }
            println!("{}", line.trim_end());
            if show_witness {
                if let Some(w) = &r.witness {
                    let text = crate::pretty::to_string(w);
                    for l in text.lines() {
                        println!("    {l}");
                    }
                }
            }
        }
        let failed = self.checks.iter().filter(|r| r.status == Status::Fail).count();
        let checks = self.checks.iter().filter(|r| r.status != Status::Info).count();
        if checks > 0 {
            println!("{}: {}/{checks} checks passed", if self.passed { "ok" } else { "FAILED" }, checks - failed);
        }
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let text = crate::pretty::to_string(self);
        std::fs::write(path, text).with_context(|| format!("cannot write report to {}", path.display()))
    }
}

pub fn matrix_value<F: Scalar>(m: &FieldMatrix<F>) -> Value {
    serde_json::to_value(export_matrix(m)).expect("matrices serialize")
}

pub fn matrices_value<'a, F: Scalar + 'a>(ms: impl IntoIterator<Item = &'a FieldMatrix<F>>) -> Value {
    Value::Array(ms.into_iter().map(matrix_value).collect())
}
