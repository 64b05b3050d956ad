//! Report types and their JSON and text renderings.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use crate::schema::Construction;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Flagged,
    Fail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Flagged => "flagged",
            Status::Fail => "fail",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct StepReport {
    pub op: String,
    pub args: Value,
    pub got: Value,
    pub expected: Value,
    pub pass: bool,
    pub anchor: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub mismatches: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// A documented conflict between a printed value and the computation.
#[derive(Debug, Clone, Serialize)]
pub struct FlagReport {
    pub field: String,
    pub paper_value: Value,
    pub computed: Value,
    pub anchor: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// A printed intermediate value that differs from the computation without
/// changing any table entry.
#[derive(Debug, Clone, Serialize)]
pub struct Remark {
    pub step: String,
    pub args: Value,
    pub paper_printed: Value,
    pub differences: Vec<String>,
    pub anchor: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub name: String,
    pub dp_degree: u8,
    pub kx3: Value,
    pub h12: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub case: String,
    pub construction: Construction,
    pub status: Status,
    pub steps: Vec<StepReport>,
    pub discrepancy_flags: Vec<FlagReport>,
    pub remarks: Vec<Remark>,
    pub table: TableRow,
    /// Wall time of the case. Cleared by [`VerificationReport::without_timing`]
    /// when byte-stable output is wanted.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_us: Option<u64>,
}

impl VerificationReport {
    pub fn without_timing(mut self) -> Self {
        self.timing_us = None;
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FlagEntry {
    pub case: String,
    #[serde(flatten)]
    pub flag: FlagReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub flagged: usize,
    pub fail: usize,
    pub flags: Vec<FlagEntry>,
    pub remarks: usize,
}

impl Summary {
    pub fn of(reports: &[VerificationReport]) -> Self {
        let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
        Summary {
            total: reports.len(),
            pass: count(Status::Pass),
            flagged: count(Status::Flagged),
            fail: count(Status::Fail),
            flags: reports
                .iter()
                .flat_map(|r| r.discrepancy_flags.iter().map(|f| FlagEntry { case: r.case.clone(), flag: f.clone() }))
                .collect(),
            remarks: reports.iter().map(|r| r.remarks.len()).sum(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.fail == 0 {
            0
        } else {
            1
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Error)]
#[error("writing {path}: {source}")]
pub struct EmitError {
    pub path: String,
    pub source: std::io::Error,
}

#[derive(Serialize)]
struct Document<'a> {
    reports: &'a [VerificationReport],
    summary: Summary,
}

/// JSON with keys in sorted order.
pub fn to_json(reports: &[VerificationReport]) -> String {
    let doc = Document { reports, summary: Summary::of(reports) };
    // round-tripping through Value sorts object keys
    let value = serde_json::to_value(&doc).expect("reports serialize");
    let mut out = serde_json::to_string_pretty(&value).expect("values serialize");
    out.push('\n');
    out
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

pub fn to_text(reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:<9} {:>9} {:>9} {:>8}  status", "Name", "dP degree", "(−K_X)³", "h^{1,2}");
    for r in reports {
        let _ = writeln!(
            out,
            "{:<9} {:>9} {:>9} {:>8}  {}",
            r.table.name,
            r.table.dp_degree,
            cell(&r.table.kx3),
            cell(&r.table.h12),
            r.status.as_str()
        );
    }
    for r in reports {
        for s in r.steps.iter().filter(|s| !s.pass) {
            let why = s.error.clone().unwrap_or_else(|| s.mismatches.join("; "));
            let _ = writeln!(out, "FAIL {} {}: {}", r.case, s.op, why);
        }
        for f in &r.discrepancy_flags {
            let _ = writeln!(
                out,
                "flag {} {}: printed {}, computed {} ({})",
                r.case,
                f.field,
                cell(&f.paper_value),
                cell(&f.computed),
                f.anchor
            );
        }
        for m in &r.remarks {
            let _ = writeln!(out, "remark {} {}: {} ({})", r.case, m.step, m.differences.join("; "), m.anchor);
        }
    }
    let s = Summary::of(reports);
    let _ = writeln!(out, "{} cases: {} pass, {} flagged, {} fail", s.total, s.pass, s.flagged, s.fail);
    out
}

pub fn render(reports: &[VerificationReport], format: Format) -> String {
    match format {
        Format::Json => to_json(reports),
        Format::Text => to_text(reports),
    }
}

/// Write to `out`, or to standard output when `out` is `None`.
pub fn emit_report(reports: &[VerificationReport], format: Format, out: Option<&Path>) -> Result<(), EmitError> {
    let text = render(reports, format);
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|source| EmitError { path: path.display().to_string(), source })
        }
        None => match std::io::stdout().lock().write_all(text.as_bytes()) {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                Err(EmitError { path: "<stdout>".into(), source: e })
            }
            _ => Ok(()),
        },
    }
}
