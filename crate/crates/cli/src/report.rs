//! CSV, JSON and plot-column output for verification records.

use crate::scan::{Quantity, Verdict, VerificationRecord};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error("empty record set")]
    Empty,
    #[error("{path}: {msg}")]
    Io { path: String, msg: String },
    #[error("parse: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportFormat {
    Csv,
    Json,
    Plot,
}

impl FromStr for ReportFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            "plot" => Ok(Self::Plot),
            _ => Err(format!("unknown format {s:?} (csv, json, plot)")),
        }
    }
}

/// Serialized form of a record. Midpoints are the nearest doubles and the
/// radii are widened to keep covering the original balls.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub t: f64,
    pub quantity: Quantity,
    pub computed_mid: f64,
    pub computed_rad: f64,
    pub bound_mid: f64,
    pub bound_rad: f64,
    pub margin_mid: f64,
    pub margin_rad: f64,
    pub verdict: Verdict,
}

impl From<&VerificationRecord> for ReportRow {
    fn from(r: &VerificationRecord) -> Self {
        let (computed_mid, computed_rad) = r.computed.to_f64_mid_rad();
        let (bound_mid, bound_rad) = r.bound.to_f64_mid_rad();
        let (margin_mid, margin_rad) = r.margin.to_f64_mid_rad();
        Self {
            t: r.t,
            quantity: r.quantity,
            computed_mid,
            computed_rad,
            bound_mid,
            bound_rad,
            margin_mid,
            margin_rad,
            verdict: r.verdict,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
struct JsonRecord {
    #[serde(flatten)]
    row: ReportRow,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
}

pub const CSV_HEADER: [&str; 9] =
    ["t", "quantity", "computed_mid", "computed_rad", "bound_mid", "bound_rad", "margin_mid", "margin_rad", "verdict"];

pub fn to_csv(records: &[VerificationRecord]) -> Result<String, ReportError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).map_err(|e| ReportError::Parse(e.to_string()))?;
    for r in records {
        let row = ReportRow::from(r);
        w.write_record([
            row.t.to_string(),
            row.quantity.to_string(),
            format!("{:e}", row.computed_mid),
            format!("{:e}", row.computed_rad),
            format!("{:e}", row.bound_mid),
            format!("{:e}", row.bound_rad),
            format!("{:e}", row.margin_mid),
            format!("{:e}", row.margin_rad),
            row.verdict.to_string(),
        ])
        .map_err(|e| ReportError::Parse(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| ReportError::Parse(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| ReportError::Parse(e.to_string()))
}

pub fn parse_csv(text: &str) -> Result<Vec<ReportRow>, ReportError> {
    let mut rd = csv::Reader::from_reader(text.as_bytes());
    let header = rd.headers().map_err(|e| ReportError::Parse(e.to_string()))?.clone();
    if header.iter().ne(CSV_HEADER.iter().copied()) {
        return Err(ReportError::Parse(format!("unexpected header {header:?}")));
    }
    let mut out = Vec::new();
    for rec in rd.records() {
        let rec = rec.map_err(|e| ReportError::Parse(e.to_string()))?;
        let num = |i: usize| -> Result<f64, ReportError> {
            rec[i].parse::<f64>().map_err(|e| ReportError::Parse(format!("column {}: {e}", CSV_HEADER[i])))
        };
        out.push(ReportRow {
            t: num(0)?,
            quantity: rec[1].parse().map_err(ReportError::Parse)?,
            computed_mid: num(2)?,
            computed_rad: num(3)?,
            bound_mid: num(4)?,
            bound_rad: num(5)?,
            margin_mid: num(6)?,
            margin_rad: num(7)?,
            verdict: rec[8].parse().map_err(ReportError::Parse)?,
        });
    }
    Ok(out)
}

pub fn to_json(records: &[VerificationRecord]) -> Result<String, ReportError> {
    let rows: Vec<JsonRecord> =
        records.iter().map(|r| JsonRecord { row: ReportRow::from(r), reason: r.reason.clone() }).collect();
    serde_json::to_string_pretty(&rows).map_err(|e| ReportError::Parse(e.to_string()))
}

/// One block per quantity, in first-appearance order, separated by a blank line.
pub fn to_plot(records: &[VerificationRecord]) -> String {
    let mut order: Vec<Quantity> = Vec::new();
    for r in records {
        if !order.contains(&r.quantity) {
            order.push(r.quantity);
        }
    }
    let mut out = String::new();
    for (i, q) in order.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        writeln!(out, "# {q}: t computed_mid bound_mid").unwrap();
        for r in records.iter().filter(|r| r.quantity == *q) {
            let row = ReportRow::from(r);
            writeln!(out, "{} {} {}", row.t, row.computed_mid, row.bound_mid).unwrap();
        }
    }
    out
}

pub fn render(records: &[VerificationRecord], format: ReportFormat) -> Result<String, ReportError> {
    if records.is_empty() {
        return Err(ReportError::Empty);
    }
    match format {
        ReportFormat::Csv => to_csv(records),
        ReportFormat::Json => to_json(records),
        ReportFormat::Plot => Ok(to_plot(records)),
    }
}

pub fn emit_report(records: &[VerificationRecord], format: ReportFormat, path: &Path) -> Result<(), ReportError> {
    let text = render(records, format)?;
    std::fs::write(path, text).map_err(|e| ReportError::Io { path: path.display().to_string(), msg: e.to_string() })
}
