//! Rendering of order tables and suite reports as aligned text, JSON, or
//! CSV. JSON and CSV documents carry a schema version header.

use std::fmt::Write as _;

use anyhow::Result;
use serde::Serialize;

use vstar_core::checks::{CheckStatus, SuiteReport};

pub const REPORT_SCHEMA: &str = "vstar.report.v1";
pub const SUITE_SCHEMA: &str = "vstar.suite.v1";

/// One row of the orders/predict/report tables. The first eight keys follow
/// the subgroup-report schema; the prediction, agreement, and error fields
/// are additive.
#[derive(Debug, Clone, Serialize)]
pub struct OrdersRow {
    pub group: String,
    pub field: u64,
    pub sigma: String,
    pub order: Option<u128>,
    pub exponent: Option<u64>,
    pub invariants: Option<Vec<u64>>,
    pub method: String,
    pub elapsed_ms: u64,
    pub predicted_order: Option<u128>,
    pub predicted_log2: Option<u32>,
    pub predicted_source: Option<String>,
    pub agreement: Option<bool>,
    pub error: Option<String>,
}

/// Top-level document for tabular commands.
#[derive(Debug, Serialize)]
pub struct ReportDocument {
    pub schema: &'static str,
    pub command: String,
    pub seed: u64,
    pub budget: u64,
    pub rows: Vec<OrdersRow>,
}

fn fmt_opt<T: std::fmt::Display>(value: &Option<T>) -> String {
    match value {
        Some(v) => v.to_string(),
        None => "-".to_string(),
    }
}

fn fmt_invariants(invariants: &Option<Vec<u64>>) -> String {
    match invariants {
        Some(list) => {
            let parts: Vec<String> = list.iter().map(|v| v.to_string()).collect();
            format!("[{}]", parts.join(","))
        }
        None => "-".to_string(),
    }
}

pub fn render_rows_table(doc: &ReportDocument) -> String {
    let headers = [
        "group",
        "field",
        "sigma",
        "predicted",
        "order",
        "exponent",
        "invariants",
        "method",
        "agree",
        "error",
    ];
    let mut table: Vec<[String; 10]> = Vec::new();
    for r in &doc.rows {
        let predicted = match (r.predicted_order, r.predicted_log2) {
            (Some(v), _) => v.to_string(),
            (None, Some(log2)) => format!("2^{log2}"),
            (None, None) => "-".to_string(),
        };
        table.push([
            r.group.clone(),
            r.field.to_string(),
            r.sigma.clone(),
            predicted,
            fmt_opt(&r.order),
            fmt_opt(&r.exponent),
            fmt_invariants(&r.invariants),
            r.method.clone(),
            fmt_opt(&r.agreement),
            r.error.clone().unwrap_or_else(|| "-".to_string()),
        ]);
    }
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in &table {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    for (i, h) in headers.iter().enumerate() {
        let _ = write!(out, "{:<width$}  ", h, width = widths[i]);
    }
    out.push('\n');
    for row in &table {
        for (i, cell) in row.iter().enumerate() {
            let _ = write!(out, "{:<width$}  ", cell, width = widths[i]);
        }
        out.push('\n');
    }
    out
}

pub fn render_rows_json(doc: &ReportDocument) -> Result<String> {
    let mut text = serde_json::to_string_pretty(doc)?;
    text.push('\n');
    Ok(text)
}

fn csv_escape(cell: &str) -> String {
    if cell.contains(',') || cell.contains('"') || cell.contains('\n') {
        format!("\"{}\"", cell.replace('"', "\"\""))
    } else {
        cell.to_string()
    }
}

pub fn render_rows_csv(doc: &ReportDocument) -> String {
    let mut out = format!(
        "# schema={} command={} seed={} budget={}\n",
        doc.schema, doc.command, doc.seed, doc.budget
    );
    out.push_str(
        "group,field,sigma,order,exponent,invariants,method,elapsed_ms,\
         predicted_order,predicted_log2,predicted_source,agreement,error\n",
    );
    for r in &doc.rows {
        let invariants = r
            .invariants
            .as_ref()
            .map(|list| {
                list.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(";")
            })
            .unwrap_or_default();
        let cells = [
            r.group.clone(),
            r.field.to_string(),
            r.sigma.clone(),
            r.order.map(|v| v.to_string()).unwrap_or_default(),
            r.exponent.map(|v| v.to_string()).unwrap_or_default(),
            invariants,
            r.method.clone(),
            r.elapsed_ms.to_string(),
            r.predicted_order.map(|v| v.to_string()).unwrap_or_default(),
            r.predicted_log2.map(|v| v.to_string()).unwrap_or_default(),
            r.predicted_source.clone().unwrap_or_default(),
            r.agreement.map(|v| v.to_string()).unwrap_or_default(),
            r.error.clone().unwrap_or_default(),
        ];
        let line: Vec<String> = cells.iter().map(|c| csv_escape(c)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

/// Suite report with the schema and seed context attached.
#[derive(Debug, Serialize)]
pub struct SuiteDocument {
    pub schema: &'static str,
    pub seed: u64,
    #[serde(flatten)]
    pub report: SuiteReport,
}

pub fn render_suite_table(doc: &SuiteDocument) -> String {
    let mut out = format!("suite {}\n", doc.report.suite);
    for check in &doc.report.checks {
        let tag = match check.status {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Skip => "SKIP",
        };
        if check.status == CheckStatus::Skip {
            let _ = writeln!(out, "  [{tag}] {}: {}", check.name, check.observed);
        } else {
            let _ = writeln!(
                out,
                "  [{tag}] {}: expected {}, observed {}",
                check.name, check.expected, check.observed
            );
        }
    }
    for note in &doc.report.notes {
        let _ = writeln!(out, "  note: {note}");
    }
    let _ = writeln!(
        out,
        "result: {}",
        if doc.report.pass { "PASS" } else { "FAIL" }
    );
    out
}

pub fn render_suite_json(doc: &SuiteDocument) -> Result<String> {
    let mut text = serde_json::to_string_pretty(doc)?;
    text.push('\n');
    Ok(text)
}

pub fn render_suite_csv(doc: &SuiteDocument) -> String {
    let mut out = format!(
        "# schema={} suite={} seed={} pass={}\n",
        doc.schema, doc.report.suite, doc.seed, doc.report.pass
    );
    out.push_str("name,expected,observed,status\n");
    for check in &doc.report.checks {
        let status = match check.status {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Skip => "skip",
        };
        let line = [
            csv_escape(&check.name),
            csv_escape(&check.expected),
            csv_escape(&check.observed),
            status.to_string(),
        ];
        out.push_str(&line.join(","));
        out.push('\n');
    }
    for note in &doc.report.notes {
        let _ = writeln!(out, "# note: {}", note.replace('\n', " "));
    }
    out
}

/// Writes to the path when given, stdout otherwise.
pub fn emit(out: Option<&std::path::Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, text)?;
            Ok(())
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
