//! Output documents: a JSON body, a table for csv/pretty, and an optional finding.

use std::io::{self, Write};

use serde::Serialize;
use serde_json::{json, Value};

use crate::cli::Format;

/// What a command produced.
#[derive(Debug, Default)]
pub struct Report {
    pub result: Value,
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    /// Lines printed above the table in pretty mode.
    pub summary: Vec<String>,
    /// A mathematical assertion that failed; exit status 2.
    pub finding: Option<String>,
}

impl Report {
    pub fn new(result: impl Serialize) -> Self {
        Report {
            result: serde_json::to_value(result).expect("serializable result"),
            ..Report::default()
        }
    }

    pub fn table(mut self, headers: Vec<&'static str>, rows: Vec<Vec<String>>) -> Self {
        self.headers = headers;
        self.rows = rows;
        self
    }

    pub fn line(mut self, s: impl Into<String>) -> Self {
        self.summary.push(s.into());
        self
    }

    pub fn finding(mut self, f: Option<String>) -> Self {
        self.finding = f;
        self
    }
}

/// A failed run: `kind` is a stable machine-readable tag.
#[derive(Debug, Serialize)]
pub struct ErrorObject {
    pub kind: &'static str,
    pub message: String,
}

pub fn write_report(out: &mut impl Write, format: Format, config: &Value, r: &Report) -> io::Result<()> {
    match format {
        Format::Json => {
            let doc = json!({
                "config": config,
                "result": r.result,
                "finding": r.finding,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)
        }
        Format::Csv => {
            writeln!(out, "# config: {config}")?;
            if let Some(f) = &r.finding {
                writeln!(out, "# finding: {f}")?;
            }
            let mut w = csv::Writer::from_writer(out);
            if r.headers.is_empty() {
                w.write_record(["result"])?;
                w.write_record([r.result.to_string()])?;
            } else {
                w.write_record(&r.headers)?;
                for row in &r.rows {
                    w.write_record(row)?;
                }
            }
            w.flush()
        }
        Format::Pretty => {
            writeln!(out, "# config: {config}")?;
            for s in &r.summary {
                writeln!(out, "{s}")?;
            }
            if let Some(f) = &r.finding {
                writeln!(out, "finding: {f}")?;
            }
            if !r.headers.is_empty() {
                write_aligned(out, &r.headers, &r.rows)?;
            } else if r.summary.is_empty() {
                writeln!(out, "{}", serde_json::to_string_pretty(&r.result)?)?;
            }
            Ok(())
        }
    }
}

pub fn write_error(out: &mut impl Write, format: Format, config: &Value, e: &ErrorObject) -> io::Result<()> {
    match format {
        Format::Json => {
            let doc = json!({ "config": config, "error": e });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)
        }
        Format::Csv => {
            writeln!(out, "# config: {config}")?;
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["error", "message"])?;
            w.write_record([e.kind, e.message.as_str()])?;
            w.flush()
        }
        Format::Pretty => {
            writeln!(out, "# config: {config}")?;
            writeln!(out, "error ({}): {}", e.kind, e.message)
        }
    }
}

/// Columns padded to their widest cell; numbers right-aligned.
fn write_aligned(out: &mut impl Write, headers: &[&str], rows: &[Vec<String>]) -> io::Result<()> {
    let width = |i: usize| {
        rows.iter()
            .filter_map(|r| r.get(i))
            .map(|c| c.chars().count())
            .chain([headers[i].chars().count()])
            .max()
            .unwrap_or(0)
    };
    let widths: Vec<usize> = (0..headers.len()).map(width).collect();
    let numeric = |s: &str| s.parse::<f64>().is_ok() || s.split_once('/').is_some_and(|(p, q)| p.parse::<i64>().is_ok() && q.parse::<i64>().is_ok());
    let fmt_row = |cells: Vec<&str>| {
        let parts: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| {
                if numeric(c) {
                    format!("{c:>w$}")
                } else {
                    format!("{c:<w$}")
                }
            })
            .collect();
        parts.join("  ").trim_end().to_string()
    };
    writeln!(out, "{}", fmt_row(headers.to_vec()))?;
    for r in rows {
        writeln!(out, "{}", fmt_row(r.iter().map(String::as_str).collect()))?;
    }
    Ok(())
}
