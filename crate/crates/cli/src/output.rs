use std::fs;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde_json::{json, Value};

use crate::config::Run;
use crate::CliResult;

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn ext(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// 17 significant digits, enough to round-trip any double.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Debug, Clone, Copy)]
pub enum Cell {
    Int(usize),
    Float(f64),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v)
    }
}

impl Cell {
    fn csv(self) -> String {
        match self {
            Cell::Int(n) => n.to_string(),
            Cell::Float(v) => fmt_f64(v),
        }
    }

    fn json(self) -> Value {
        match self {
            Cell::Int(n) => json!(n),
            Cell::Float(v) => json!(v),
        }
    }
}

pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(cols: &[&str]) -> Self {
        Self::with_header(cols.iter().map(|c| c.to_string()).collect())
    }

    pub fn with_header(header: Vec<String>) -> Self {
        Table {
            header,
            rows: Vec::new(),
        }
    }

    pub fn push<C: Into<Cell>>(&mut self, row: Vec<C>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row.into_iter().map(Into::into).collect());
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| c.csv()).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Array(r.iter().map(|c| c.json()).collect()))
            .collect();
        json!({ "columns": self.header, "rows": rows })
    }
}

pub fn sidecar_path(data: &Path) -> PathBuf {
    let mut s = data.as_os_str().to_owned();
    s.push(".meta.json");
    PathBuf::from(s)
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn write_pair(run: &Run, data: String, mut sidecar: Value) -> CliResult<()> {
    let path = run.output_path();
    sidecar["data_file"] = json!(path
        .file_name()
        .map(|f| f.to_string_lossy().into_owned())
        .unwrap_or_default());
    fs::write(&path, data)?;
    fs::write(sidecar_path(&path), json_text(&sidecar))?;
    Ok(())
}

pub fn write_outputs(run: &Run, table: &Table, sidecar: Value) -> CliResult<()> {
    let data = match run.format {
        Format::Csv => table.to_csv(),
        Format::Json => json_text(&table.to_json()),
    };
    write_pair(run, data, sidecar)
}

pub fn write_json_outputs(run: &Run, data: &Value, sidecar: Value) -> CliResult<()> {
    write_pair(run, json_text(data), sidecar)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_digits() {
        for v in [0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23] {
            assert_eq!(fmt_f64(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn csv_layout() {
        let mut t = Table::new(&["n", "w"]);
        t.push(vec![Cell::Int(0), Cell::Float(0.5)]);
        assert_eq!(t.to_csv(), "n,w\n0,5.0000000000000000e-1\n");
    }

    #[test]
    fn sidecar_name() {
        assert_eq!(
            sidecar_path(Path::new("out/a.csv")),
            PathBuf::from("out/a.csv.meta.json")
        );
    }
}
