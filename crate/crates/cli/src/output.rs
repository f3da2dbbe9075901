//! Table model and the CSV/JSON writers.
//!
//! CSV floats are printed with a fixed digit count in scientific notation
//! so output is byte-stable for fixed inputs and precision. JSON carries
//! raw f64 values (shortest round-trip form), so re-parsing reproduces the
//! in-memory numbers exactly.

use std::fs;
use std::io::{self, Write};

use pleijel_core::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone)]
pub struct OutputSpec {
    pub format: Format,
    pub path: Option<String>,
    pub precision: usize,
}

impl OutputSpec {
    pub fn new(format: Format, path: Option<String>, precision: usize) -> Result<Self> {
        if !(4..=17).contains(&precision) {
            return Err(Error::InvalidInput(format!(
                "precision must lie in [4, 17], got {precision}"
            )));
        }
        Ok(OutputSpec {
            format,
            path,
            precision,
        })
    }
}

#[derive(Debug, Clone)]
pub enum Cell {
    UInt(u64),
    Float(f64),
    Text(String),
    Bool(bool),
}

impl Cell {
    fn csv(&self, precision: usize) -> String {
        match self {
            Cell::UInt(v) => v.to_string(),
            Cell::Float(v) => format_float(*v, precision),
            Cell::Text(v) => v.clone(),
            Cell::Bool(v) => v.to_string(),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Cell::UInt(v) => serde_json::Value::from(*v),
            Cell::Float(v) => serde_json::Value::from(*v),
            Cell::Text(v) => serde_json::Value::from(v.clone()),
            Cell::Bool(v) => serde_json::Value::from(*v),
        }
    }
}

pub fn format_float(v: f64, precision: usize) -> String {
    format!("{v:.precision$e}")
}

/// A rectangular result: named columns, rows, and summary key-values.
#[derive(Debug, Default)]
pub struct Table {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub meta: Vec<(&'static str, Cell)>,
}

impl Table {
    pub fn new(headers: Vec<&'static str>) -> Self {
        Table {
            headers,
            rows: Vec::new(),
            meta: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    pub fn with_meta(mut self, key: &'static str, value: Cell) -> Self {
        self.meta.push((key, value));
        self
    }

    pub fn to_csv(&self, precision: usize) -> String {
        let mut out = String::new();
        for (k, v) in &self.meta {
            out.push_str(&format!("# {k}={}\n", v.csv(precision)));
        }
        out.push_str(&self.headers.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| c.csv(precision)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut meta = serde_json::Map::new();
        for (k, v) in &self.meta {
            meta.insert((*k).to_string(), v.json());
        }
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = serde_json::Map::new();
                for (h, c) in self.headers.iter().zip(row) {
                    obj.insert((*h).to_string(), c.json());
                }
                serde_json::Value::Object(obj)
            })
            .collect();
        let mut top = serde_json::Map::new();
        if !meta.is_empty() {
            top.insert("meta".into(), serde_json::Value::Object(meta));
        }
        top.insert("rows".into(), serde_json::Value::Array(rows));
        serde_json::Value::Object(top)
    }

    pub fn write(&self, spec: &OutputSpec) -> io::Result<()> {
        let body = match spec.format {
            Format::Csv => self.to_csv(spec.precision),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("table is json");
                s.push('\n');
                s
            }
        };
        match &spec.path {
            None => io::stdout().write_all(body.as_bytes()),
            Some(p) => fs::write(p, body),
        }
    }
}
