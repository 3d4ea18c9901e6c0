//! Deterministic report emission.
//!
//! CSV: `# key=value` metadata lines, a header row, comma-separated rows;
//! floats carry 17 significant digits so they round-trip exactly. JSON: one
//! object with `metadata`, `columns`, and `rows`; numbers stay JSON numbers
//! (serde_json prints shortest round-trip forms). Identical configurations
//! produce byte-identical files.

use std::io::{self, Write};

use num_complex::Complex64;

#[derive(Debug, Clone, Copy)]
pub enum Cell {
    Int(i64),
    Float(f64),
}

#[derive(Debug, Clone)]
pub enum Meta {
    Int(i64),
    Float(f64),
    Complex(Complex64),
    Text(String),
}

#[derive(Debug, Clone)]
pub struct Report {
    pub metadata: Vec<(String, Meta)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

fn float_text(value: f64) -> String {
    format!("{value:.16e}")
}

fn complex_text(value: Complex64) -> String {
    format!("{:.16e}{:+.16e}i", value.re, value.im)
}

impl Meta {
    fn csv_text(&self) -> String {
        match self {
            Meta::Int(v) => v.to_string(),
            Meta::Float(v) => float_text(*v),
            Meta::Complex(v) => complex_text(*v),
            Meta::Text(v) => v.clone(),
        }
    }

    fn json_value(&self) -> serde_json::Value {
        match self {
            Meta::Int(v) => serde_json::Value::from(*v),
            Meta::Float(v) => serde_json::Value::from(*v),
            Meta::Complex(v) => serde_json::Value::from(complex_text(*v)),
            Meta::Text(v) => serde_json::Value::from(v.as_str()),
        }
    }
}

impl Cell {
    fn csv_text(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => float_text(*v),
        }
    }

    fn json_value(&self) -> serde_json::Value {
        match self {
            Cell::Int(v) => serde_json::Value::from(*v),
            Cell::Float(v) => serde_json::Value::from(*v),
        }
    }
}

impl Report {
    pub fn write_csv<W: Write>(&self, out: &mut W) -> io::Result<()> {
        for (key, value) in &self.metadata {
            writeln!(out, "# {key}={}", value.csv_text())?;
        }
        writeln!(out, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv_text).collect();
            writeln!(out, "{}", cells.join(","))?;
        }
        Ok(())
    }

    pub fn write_json<W: Write>(&self, out: &mut W) -> io::Result<()> {
        let metadata: serde_json::Map<String, serde_json::Value> = self
            .metadata
            .iter()
            .map(|(key, value)| (key.clone(), value.json_value()))
            .collect();
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| serde_json::Value::from_iter(row.iter().map(Cell::json_value)))
            .collect();
        let document = serde_json::json!({
            "metadata": metadata,
            "columns": self.columns,
            "rows": rows,
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&document)?)
    }
}
