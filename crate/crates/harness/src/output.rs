//! CSV and JSON rendering with byte-stable number formatting.
//!
//! Floats use the shortest representation that round-trips (`{:?}`), empty
//! cells stand for missing values, lines end in `\n`.

use std::path::Path;

use serde_json::{Map, Value};

use crate::error::{HarnessError, Result};
use crate::sweep::{Cell, SweepResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

pub fn format_num(v: f64) -> String {
    format!("{v:?}")
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn cell_text(c: &Cell) -> String {
    match c {
        Cell::Num(v) => format_num(*v),
        Cell::Text(t) => csv_field(t),
        Cell::Empty => String::new(),
    }
}

fn cell_json(c: &Cell) -> Value {
    match c {
        Cell::Num(v) => serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number),
        Cell::Text(t) => Value::String(t.clone()),
        Cell::Empty => Value::Null,
    }
}

pub fn to_csv(columns: &[String], rows: &[Vec<Cell>]) -> String {
    let mut out = columns.iter().map(|c| csv_field(c)).collect::<Vec<_>>().join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.iter().map(cell_text).collect::<Vec<_>>().join(","));
        out.push('\n');
    }
    out
}

pub fn to_json(columns: &[String], rows: &[Vec<Cell>]) -> String {
    let records: Vec<Value> = rows
        .iter()
        .map(|row| {
            let obj: Map<String, Value> = columns
                .iter()
                .zip(row)
                .map(|(k, c)| (k.clone(), cell_json(c)))
                .collect();
            Value::Object(obj)
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&Value::Array(records)).expect("json values serialize");
    s.push('\n');
    s
}

/// A single flat object such as `{"p_coll": 1.0}`; empty cells are omitted.
pub fn to_json_object(pairs: &[(String, Cell)]) -> String {
    let body: Vec<String> = pairs
        .iter()
        .filter(|(_, c)| *c != Cell::Empty)
        .map(|(k, c)| format!("{}: {}", Value::String(k.clone()), cell_json(c)))
        .collect();
    format!("{{{}}}\n", body.join(", "))
}

pub fn render(res: &SweepResult, format: Format) -> String {
    match format {
        Format::Csv => to_csv(&res.columns, &res.rows),
        Format::Json => to_json(&res.columns, &res.rows),
    }
}

pub fn write_file(path: &Path, text: &str) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).map_err(|e| HarnessError::io(parent.display().to_string(), e))?;
    }
    std::fs::write(path, text).map_err(|e| HarnessError::io(path.display().to_string(), e))
}

/// Writes the sweep and a `<name>.meta.json` sidecar holding seed, build
/// identity and wall time, which would otherwise break byte stability.
pub fn write_sweep(path: &Path, res: &SweepResult, format: Format) -> Result<()> {
    write_file(path, &render(res, format))?;
    let meta = serde_json::to_string_pretty(&res.meta).expect("meta serializes");
    write_file(&meta_path(path), &(meta + "\n"))
}

pub fn meta_path(path: &Path) -> std::path::PathBuf {
    let mut name = path.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(".meta.json");
    path.with_file_name(name)
}
