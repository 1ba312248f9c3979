//! Report model shared by every subcommand and its three renderings.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde_json::{json, Map, Value};
use steklov::families::ClosedFormValue;

pub const TOOL: &str = "steklov";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Rounds to 12 significant digits and snaps round-off noise to zero.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    if x.abs() < 1e-13 {
        return 0.0;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

pub fn num(x: f64) -> String {
    round12(x).to_string()
}

pub fn num_json(x: f64) -> Value {
    json!(round12(x))
}

pub fn exact(v: &ClosedFormValue) -> Option<String> {
    v.as_rational().map(|r| {
        if *r.denom() == 1 {
            r.numer().to_string()
        } else {
            format!("{}/{}", r.numer(), r.denom())
        }
    })
}

/// JSON for a closed-form value: decimal, and `p/q` when rational.
pub fn closed_form_json(v: &ClosedFormValue) -> Value {
    let mut m = Map::new();
    m.insert("value".into(), num_json(v.to_f64()));
    m.insert("form".into(), json!(v.to_string()));
    if let Some(e) = exact(v) {
        m.insert("exact".into(), json!(e));
    }
    Value::Object(m)
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: Vec<&'static str>) -> Self {
        Self {
            headers,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub tolerance: f64,
    /// Command-specific fields, merged after the common header.
    pub body: Map<String, Value>,
    pub summary: Vec<String>,
    pub table: Table,
    /// A verifier found a mismatch.
    pub failed: bool,
}

impl Report {
    pub fn new(command: &'static str, tolerance: f64, table: Table) -> Self {
        Self {
            command,
            tolerance,
            body: Map::new(),
            summary: Vec::new(),
            table,
            failed: false,
        }
    }

    pub fn set(&mut self, key: &str, value: Value) {
        self.body.insert(key.to_string(), value);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.render_json(),
            Format::Csv => self.render_csv(),
            Format::Text => self.render_text(),
        }
    }

    fn render_json(&self) -> String {
        let mut m = Map::new();
        m.insert("tool".into(), json!(TOOL));
        m.insert("version".into(), json!(VERSION));
        m.insert("command".into(), json!(self.command));
        m.insert("tolerance".into(), json!(self.tolerance));
        m.insert("passed".into(), json!(!self.failed));
        for (k, v) in &self.body {
            m.insert(k.clone(), v.clone());
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(m)).expect("json values serialize");
        s.push('\n');
        s
    }

    fn render_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.table.headers)
            .expect("in-memory write");
        for row in &self.table.rows {
            w.write_record(row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
    }

    fn render_text(&self) -> String {
        let mut out = format!(
            "{TOOL} {VERSION} {} (tolerance {:e})\n",
            self.command, self.tolerance
        );
        for line in &self.summary {
            let _ = writeln!(out, "{line}");
        }
        if !self.table.rows.is_empty() {
            out.push('\n');
            let widths: Vec<usize> = (0..self.table.headers.len())
                .map(|c| {
                    self.table
                        .rows
                        .iter()
                        .map(|r| r[c].len())
                        .chain([self.table.headers[c].len()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let line = |cells: Vec<&str>| {
                let padded: Vec<String> = cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect();
                padded.join("  ").trim_end().to_string()
            };
            let _ = writeln!(out, "{}", line(self.table.headers.clone()));
            for row in &self.table.rows {
                let _ = writeln!(out, "{}", line(row.iter().map(String::as_str).collect()));
            }
        }
        out
    }
}
