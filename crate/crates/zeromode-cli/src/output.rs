//! Deterministic table output: CSV with 17-significant-digit floats and a
//! hand-rolled JSON rendering with a `meta` object, so that identical flags
//! always produce byte-identical files.

use std::fmt::Write as _;

/// One table cell.
#[derive(Debug, Clone)]
pub enum Value {
    Num(f64),
    Int(u64),
    Text(String),
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Num(x)
    }
}

impl From<u64> for Value {
    fn from(x: u64) -> Self {
        Value::Int(x)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Text(s.to_string())
    }
}

/// Fixed 17-significant-digit representation; infinities encode as "inf".
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x.is_infinite() {
        if x > 0.0 {
            "inf".to_string()
        } else {
            "-inf".to_string()
        }
    } else {
        format!("{x:.16e}")
    }
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Num(x) => format_float(*x),
        Value::Int(n) => n.to_string(),
        Value::Text(s) => s.clone(),
    }
}

fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out
}

fn json_cell(v: &Value) -> String {
    match v {
        // JSON has no infinities or NaN; those become strings.
        Value::Num(x) if x.is_finite() => format_float(*x),
        Value::Num(x) if x.is_nan() => "\"nan\"".to_string(),
        Value::Num(x) if *x > 0.0 => "\"inf\"".to_string(),
        Value::Num(_) => "\"-inf\"".to_string(),
        Value::Int(n) => n.to_string(),
        Value::Text(s) => format!("\"{}\"", json_escape(s)),
    }
}

/// A sweep result: named columns, rows in grid order, and meta entries
/// (parameters, tolerances, versions) carried into the JSON output.
#[derive(Debug, Clone)]
pub struct Table {
    pub subject: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
    pub meta: Vec<(String, Value)>,
}

impl Table {
    pub fn new(subject: &str, columns: &[&str]) -> Self {
        Self {
            subject: subject.to_string(),
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
            meta: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<Value>) {
        assert_eq!(row.len(), self.columns.len(), "row width mismatch");
        self.rows.push(row);
    }

    pub fn push_meta(&mut self, key: &str, value: Value) {
        self.meta.push((key.to_string(), value));
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(csv_cell).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut out = String::new();
        out.push_str("{\n  \"meta\": {\n");
        let _ = writeln!(out, "    \"subject\": \"{}\",", json_escape(&self.subject));
        let _ = write!(out, "    \"version\": \"{}\"", env!("CARGO_PKG_VERSION"));
        for (k, v) in &self.meta {
            let _ = write!(out, ",\n    \"{}\": {}", json_escape(k), json_cell(v));
        }
        out.push_str("\n  },\n  \"rows\": [");
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str("\n    {");
            for (j, (name, cell)) in self.columns.iter().zip(row.iter()).enumerate() {
                if j > 0 {
                    out.push_str(", ");
                }
                let _ = write!(out, "\"{}\": {}", json_escape(name), json_cell(cell));
            }
            out.push('}');
        }
        out.push_str("\n  ]\n}\n");
        out
    }
}
