//! Tables and their JSON / CSV rendering.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Serialize, Serializer};
use serde_json::{json, Map, Value};

use crate::config::{Format, RunConfig};
use crate::CliError;

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Str(String),
    Bool(bool),
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Cell::Int(v) => s.serialize_i64(*v),
            Cell::Float(v) => s.serialize_f64(*v),
            Cell::Str(v) => s.serialize_str(v),
            Cell::Bool(v) => s.serialize_bool(*v),
        }
    }
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            // Same shortest round-trip text as the JSON output.
            Cell::Float(v) if v.is_finite() => serde_json::to_string(v).unwrap_or_else(|_| v.to_string()),
            Cell::Float(v) => v.to_string(),
            Cell::Str(v) => v.clone(),
            Cell::Bool(v) => v.to_string(),
        }
    }
}

macro_rules! cell_from {
    ($($t:ty => $v:ident),*) => {
        $(impl From<$t> for Cell {
            fn from(x: $t) -> Self {
                Cell::$v(x.into())
            }
        })*
    };
}

cell_from!(i64 => Int, i32 => Int, u32 => Int, f64 => Float, String => Str, &str => Str, bool => Bool);

#[derive(Debug, Clone)]
pub struct Table {
    pub name: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &'static str, columns: &[&'static str]) -> Self {
        Self {
            name,
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn json_rows(&self) -> Value {
        let rows = self.rows.iter().map(|r| {
            let obj: Map<String, Value> = self
                .columns
                .iter()
                .zip(r)
                .map(|(c, v)| (c.to_string(), serde_json::to_value(v).unwrap_or(Value::Null)))
                .collect();
            Value::Object(obj)
        });
        Value::Array(rows.collect())
    }

    fn write_csv<W: Write>(&self, w: W) -> Result<(), CliError> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(&self.columns)?;
        for r in &self.rows {
            out.write_record(r.iter().map(Cell::text))?;
        }
        out.flush()?;
        Ok(())
    }
}

/// Output of one command: tables plus scalar summary fields.
pub struct Document<'a> {
    pub command: &'static str,
    pub config: &'a RunConfig,
    pub summary: Vec<(&'static str, Value)>,
    pub tables: Vec<Table>,
}

impl Document<'_> {
    fn json(&self, tables: &[&Table]) -> Value {
        let mut doc = Map::new();
        doc.insert("schema".into(), json!(SCHEMA));
        doc.insert("command".into(), json!(self.command));
        doc.insert("config".into(), serde_json::to_value(self.config).unwrap_or(Value::Null));
        for (k, v) in &self.summary {
            doc.insert((*k).into(), v.clone());
        }
        for t in tables {
            doc.insert(t.name.into(), t.json_rows());
        }
        Value::Object(doc)
    }

    fn render<W: Write>(&self, tables: &[&Table], mut w: W) -> Result<(), CliError> {
        match self.config.format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut w, &self.json(tables))?;
                writeln!(w)?;
            }
            Format::Csv => {
                for (i, t) in tables.iter().enumerate() {
                    if i > 0 {
                        writeln!(w)?;
                    }
                    t.write_csv(&mut w)?;
                }
            }
        }
        Ok(())
    }

    /// Writes the whole document to `--out`, or to stdout.
    pub fn emit(&self) -> Result<(), CliError> {
        let tables: Vec<&Table> = self.tables.iter().collect();
        match &self.config.out {
            Some(path) => {
                let mut buf = Vec::new();
                self.render(&tables, &mut buf)?;
                fs::write(path, buf)?;
            }
            None => self.render(&tables, std::io::stdout().lock())?,
        }
        Ok(())
    }

    /// Writes one file per table into `dir`, named after the table.
    pub fn emit_split(&self, dir: &Path) -> Result<Vec<std::path::PathBuf>, CliError> {
        fs::create_dir_all(dir)?;
        let mut written = Vec::new();
        for t in &self.tables {
            let path = dir.join(format!("{}.{}", t.name, self.config.format.extension()));
            let mut buf = Vec::new();
            self.render(&[t], &mut buf)?;
            fs::write(&path, buf)?;
            written.push(path);
        }
        Ok(written)
    }
}
