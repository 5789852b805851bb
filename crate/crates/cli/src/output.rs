use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use crate::args::Format;
use crate::error::{CliError, Result};

/// 17 significant digits: always enough to round-trip an `f64`.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Int(u64),
    Float(f64),
}

impl Cell {
    fn text(self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) => fmt_float(x),
        }
    }

    fn json(self) -> Value {
        match self {
            Cell::Int(i) => json!(i),
            Cell::Float(x) => json!(x),
        }
    }
}

/// A rectangular result table plus free-form metadata.
#[derive(Debug, Clone)]
pub struct Artifact {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub meta: Value,
}

impl Artifact {
    pub fn new(header: Vec<&'static str>, meta: Value) -> Self {
        Artifact {
            header,
            rows: Vec::new(),
            meta,
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Vec<u8> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(|c| c.text())).expect("in-memory write");
        }
        w.into_inner().expect("in-memory flush")
    }

    pub fn to_json(&self) -> Value {
        json!({
            "meta": self.meta,
            "columns": self.header,
            "rows": self.rows.iter().map(|r| r.iter().map(|c| c.json()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

pub fn pretty(value: &Value) -> Vec<u8> {
    let mut s = serde_json::to_vec_pretty(value).expect("JSON values always serialize");
    s.push(b'\n');
    s
}

/// Where the metadata of a CSV written to `out` goes.
pub fn sidecar_path(out: &Path) -> PathBuf {
    let candidate = out.with_extension("json");
    if candidate == out {
        out.with_extension("meta.json")
    } else {
        candidate
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::write(path, bytes).map_err(|e| CliError::io(path, e))
}

fn write_stdout(bytes: &[u8]) -> Result<()> {
    let mut out = std::io::stdout().lock();
    out.write_all(bytes)
        .and_then(|_| out.flush())
        .map_err(|e| CliError::io("<stdout>", e))
}

/// Writes the artifact. CSV goes to `out` (or stdout) with the metadata in a
/// JSON sidecar next to it; JSON bundles data and metadata in one document.
pub fn emit(artifact: &Artifact, format: Format, out: Option<&Path>) -> Result<()> {
    match (format, out) {
        (Format::Csv, Some(path)) => {
            write_file(path, &artifact.to_csv())?;
            write_file(&sidecar_path(path), &pretty(&artifact.meta))
        }
        (Format::Csv, None) => write_stdout(&artifact.to_csv()),
        (Format::Json, Some(path)) => write_file(path, &pretty(&artifact.to_json())),
        (Format::Json, None) => write_stdout(&pretty(&artifact.to_json())),
    }
}

/// Writes a bare JSON document to `out` or stdout.
pub fn emit_json(value: &Value, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => write_file(path, &pretty(value)),
        None => write_stdout(&pretty(value)),
    }
}
