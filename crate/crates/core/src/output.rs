//! Deterministic text output: 15 significant digits in lowercase scientific
//! notation, LF line endings, fixed field order.

use std::fmt::Write as _;

/// `x` with 15 significant digits, e.g. `-3.75000000000000e0`.
/// Non-finite values are written as `nan`, `inf` or `-inf`.
pub fn number(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{x:.14e}")
    }
}

fn json_number(x: f64) -> String {
    if x.is_finite() {
        number(x)
    } else {
        "null".to_string()
    }
}

fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// A flat JSON object with insertion-ordered keys.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Record {
    fields: Vec<(String, String)>,
}

impl Record {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn text(mut self, key: &str, value: &str) -> Self {
        self.fields.push((key.to_string(), json_string(value)));
        self
    }

    pub fn number(mut self, key: &str, value: f64) -> Self {
        self.fields.push((key.to_string(), json_number(value)));
        self
    }

    pub fn optional_number(mut self, key: &str, value: Option<f64>) -> Self {
        self.fields.push((key.to_string(), value.map_or("null".to_string(), json_number)));
        self
    }

    pub fn integer(mut self, key: &str, value: u64) -> Self {
        self.fields.push((key.to_string(), value.to_string()));
        self
    }

    pub fn numbers(mut self, key: &str, values: &[f64]) -> Self {
        let items: Vec<String> = values.iter().map(|&v| json_number(v)).collect();
        self.fields.push((key.to_string(), format!("[{}]", items.join(", "))));
        self
    }

    pub fn to_json(&self) -> String {
        let body: Vec<String> = self.fields.iter().map(|(k, v)| format!("{}: {}", json_string(k), v)).collect();
        format!("{{{}}}", body.join(", "))
    }
}

/// JSON array of records, one record per line.
pub fn json_array(records: &[Record]) -> String {
    if records.is_empty() {
        return "[]\n".to_string();
    }
    let lines: Vec<String> = records.iter().map(|r| format!("  {}", r.to_json())).collect();
    format!("[\n{}\n]\n", lines.join(",\n"))
}

/// Comma-separated table with a header row.
pub fn csv_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}
