//! Versioned CSV and JSON output.
//!
//! CSV layout: comment lines starting with `#` carry the schema version, the
//! command and the full settings; then one header row of `name[unit]` cells;
//! then data rows. Reals are written with 17 significant digits, complex
//! numbers as two columns `_re`, `_im`. Missing values are empty cells. The
//! JSON form carries the same header and rows, with `null` for missing values.

use std::fmt::Write as _;

use conifold_hk::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::settings::Settings;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Column {
    pub name: String,
    pub unit: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Real(Option<f64>),
    Int(i64),
    Bool(bool),
    Text(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub command: String,
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<Cell>>,
}

/// Column builder that keeps names and cells in step.
#[derive(Debug, Default)]
pub struct Schema {
    columns: Vec<Column>,
}

impl Schema {
    pub fn real(mut self, name: &str, unit: &'static str) -> Self {
        self.columns.push(Column { name: name.to_string(), unit });
        self
    }

    pub fn complex(self, name: &str, unit: &'static str) -> Self {
        self.real(&format!("{name}_re"), unit).real(&format!("{name}_im"), unit)
    }

    pub fn text(self, name: &str) -> Self {
        self.real(name, "")
    }

    pub fn into_table(self, command: &str) -> Table {
        Table { command: command.to_string(), columns: self.columns, rows: Vec::new() }
    }
}

/// Row builder.
#[derive(Debug, Default)]
pub struct Row(pub Vec<Cell>);

impl Row {
    pub fn real(mut self, x: f64) -> Self {
        self.0.push(Cell::Real(Some(x)));
        self
    }

    pub fn complex(self, z: Complex64) -> Self {
        self.real(z.re).real(z.im)
    }

    pub fn missing(mut self, n: usize) -> Self {
        self.0.extend(std::iter::repeat_n(Cell::Real(None), n));
        self
    }

    pub fn int(mut self, k: i64) -> Self {
        self.0.push(Cell::Int(k));
        self
    }

    pub fn flag(mut self, b: bool) -> Self {
        self.0.push(Cell::Bool(b));
        self
    }

    pub fn text(mut self, s: impl Into<String>) -> Self {
        self.0.push(Cell::Text(s.into()));
        self
    }
}

impl Table {
    pub fn push(&mut self, row: Row) {
        assert_eq!(row.0.len(), self.columns.len(), "row width does not match the schema of {}", self.command);
        self.rows.push(row.0);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c.name == name)
    }

    pub fn render(&self, settings: &Settings, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(settings),
            Format::Json => self.to_json(settings),
        }
    }

    pub fn to_csv(&self, settings: &Settings) -> String {
        let mut out = String::new();
        writeln!(out, "# conifold-hk schema {SCHEMA_VERSION}").unwrap();
        writeln!(out, "# command: {}", self.command).unwrap();
        writeln!(out, "# settings: {}", settings.header_json()).unwrap();
        let header: Vec<String> = self.columns.iter().map(|c| format!("{}[{}]", c.name, c.unit)).collect();
        writeln!(out, "{}", header.join(",")).unwrap();
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(csv_cell).collect();
            writeln!(out, "{}", cells.join(",")).unwrap();
        }
        out
    }

    pub fn to_json(&self, settings: &Settings) -> String {
        let settings: Value = serde_json::from_str(&settings.header_json()).expect("settings are JSON");
        let v = json!({
            "schema": SCHEMA_VERSION,
            "command": self.command,
            "settings": settings,
            "columns": self.columns,
            "rows": self.rows,
        });
        let mut s = serde_json::to_string_pretty(&v).expect("table serializes");
        s.push('\n');
        s
    }
}

/// 17 significant digits, '.' decimal.
pub fn format_real(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

fn csv_cell(c: &Cell) -> String {
    match c {
        Cell::Real(Some(x)) => format_real(*x),
        Cell::Real(None) => String::new(),
        Cell::Int(k) => k.to_string(),
        Cell::Bool(b) => b.to_string(),
        Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
        Cell::Text(s) => s.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(format_real(0.1), "1.0000000000000001e-1");
        assert_eq!(format_real(-2.5), "-2.5000000000000000e0");
        let x = 0.123_456_789_012_345_68_f64;
        assert_eq!(format_real(x).parse::<f64>().unwrap(), x);
    }

    #[test]
    fn csv_and_json_agree() {
        let mut t = Schema::default().complex("t", "1").real("r", "1").text("status").into_table("demo");
        t.push(Row::default().complex(Complex64::new(0.5, -1.0)).real(3.0).text("ok"));
        t.push(Row::default().missing(3).text("DomainError: a, b"));
        let s = Settings::default();
        let csv = t.to_csv(&s);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "# conifold-hk schema 1");
        assert_eq!(lines[3], "t_re[1],t_im[1],r[1],status[]");
        assert_eq!(lines[5], ",,,\"DomainError: a, b\"");
        let v: Value = serde_json::from_str(&t.to_json(&s)).unwrap();
        assert_eq!(v["rows"][0][1], json!(-1.0));
        assert_eq!(v["rows"][1][0], Value::Null);
        assert_eq!(v["columns"].as_array().unwrap().len(), 4);
    }
}
