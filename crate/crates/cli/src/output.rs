//! Rendering of command records as text, CSV or JSON.

use std::io::Write;
use std::path::Path;

use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

/// Ordered key/value pairs; order is kept for CSV columns and text lines.
pub type Fields = Vec<(String, Value)>;

pub fn field(key: &str, v: impl Into<Value>) -> (String, Value) {
    (key.to_string(), v.into())
}

/// JSON numbers cannot hold non-finite values; they are written as strings.
pub fn num(v: f64) -> Value {
    if v.is_finite() {
        Value::from(v)
    } else {
        Value::from(v.to_string())
    }
}

pub fn opt_num(v: Option<f64>) -> Value {
    v.map_or(Value::Null, num)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Fail,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Fail => "fail",
        }
    }
}

/// One command outcome: a single result record or a table of rows.
pub struct Record {
    pub command: String,
    pub inputs: Fields,
    pub tolerances: Fields,
    pub status: Status,
    pub body: Body,
}

pub enum Body {
    Single(Fields),
    Rows { rows: Vec<Fields>, summary: Fields },
}

fn object(fields: &Fields) -> Value {
    Value::Object(fields.iter().cloned().collect::<Map<String, Value>>())
}

/// Nine significant digits, fixed notation for moderate magnitudes.
pub fn sig9(v: f64) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    if v == 0.0 {
        return "0".into();
    }
    let e = v.abs().log10().floor() as i32;
    if (-4..9).contains(&e) {
        format!("{:.*}", (8 - e).max(0) as usize, v)
    } else {
        format!("{v:.8e}")
    }
}

fn cell_text(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) if n.is_f64() => sig9(n.as_f64().unwrap_or(f64::NAN)),
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(cell_text).collect::<Vec<_>>().join(";"),
        Value::Object(_) => v.to_string(),
    }
}

impl Record {
    pub fn to_json(&self) -> String {
        let results = match &self.body {
            Body::Single(f) => object(f),
            Body::Rows { rows, summary } => {
                let mut m: Map<String, Value> = summary.iter().cloned().collect();
                m.insert("rows".into(), Value::Array(rows.iter().map(object).collect()));
                Value::Object(m)
            }
        };
        let mut top = Map::new();
        top.insert("command".into(), Value::from(self.command.clone()));
        top.insert("inputs".into(), object(&self.inputs));
        top.insert("results".into(), results);
        top.insert("tolerances".into(), object(&self.tolerances));
        top.insert("status".into(), Value::from(self.status.as_str()));
        let mut s = serde_json::to_string_pretty(&Value::Object(top)).unwrap_or_default();
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> Result<String, String> {
        let rows: Vec<&Fields> = match &self.body {
            Body::Single(f) => vec![f],
            Body::Rows { rows, .. } => rows.iter().collect(),
        };
        let mut w = csv::Writer::from_writer(Vec::new());
        if let Some(first) = rows.first() {
            w.write_record(first.iter().map(|(k, _)| k.as_str()))
                .map_err(|e| e.to_string())?;
        }
        for r in rows {
            w.write_record(r.iter().map(|(_, v)| cell_text(v)))
                .map_err(|e| e.to_string())?;
        }
        let bytes = w.into_inner().map_err(|e| e.to_string())?;
        String::from_utf8(bytes).map_err(|e| e.to_string())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match &self.body {
            Body::Single(f) => {
                for (k, v) in f {
                    out.push_str(&format!("{k}: {}\n", cell_text(v)));
                }
            }
            Body::Rows { rows, summary } => {
                if let Some(first) = rows.first() {
                    let cells: Vec<Vec<String>> = rows
                        .iter()
                        .map(|r| r.iter().map(|(_, v)| cell_text(v)).collect())
                        .collect();
                    let widths: Vec<usize> = first
                        .iter()
                        .enumerate()
                        .map(|(j, (k, _))| {
                            cells.iter().map(|c| c[j].len()).max().unwrap_or(0).max(k.len())
                        })
                        .collect();
                    let line = |items: Vec<&str>| {
                        items
                            .iter()
                            .zip(&widths)
                            .map(|(s, w)| format!("{s:>w$}"))
                            .collect::<Vec<_>>()
                            .join("  ")
                    };
                    out.push_str(&line(first.iter().map(|(k, _)| k.as_str()).collect()));
                    out.push('\n');
                    for c in &cells {
                        out.push_str(&line(c.iter().map(String::as_str).collect()));
                        out.push('\n');
                    }
                }
                for (k, v) in summary {
                    out.push_str(&format!("{k}: {}\n", cell_text(v)));
                }
            }
        }
        out.push_str(&format!("status: {}\n", self.status.as_str()));
        out
    }

    pub fn render(&self, format: Format) -> Result<String, String> {
        match format {
            Format::Text => Ok(self.to_text()),
            Format::Csv => self.to_csv(),
            Format::Json => Ok(self.to_json()),
        }
    }
}

/// Writes to `path`, or to standard output when absent.
pub fn emit(text: &str, path: Option<&Path>) -> Result<(), String> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| e.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_significant_digits() {
        assert_eq!(sig9(-2.889618205352143), "-2.88961821");
        assert_eq!(sig9(-377.00956945988423), "-377.009569");
        assert_eq!(sig9(0.0425), "0.0425000000");
        assert_eq!(sig9(1.5e-7), "1.50000000e-7");
        assert_eq!(sig9(0.0), "0");
    }
}
