//! Command output in JSON or CSV, and the run manifest.

use std::collections::BTreeMap;

use hyptr_core::numerics::{Complex64, Matrix2C, Matrix4C};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::config::Config;
use crate::error::{CliError, CliResult};
use crate::Command;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

pub fn c(z: Complex64) -> Value {
    json!([z.re, z.im])
}

pub fn m2(m: &Matrix2C) -> Value {
    json!([[c(m[(0, 0)]), c(m[(0, 1)])], [c(m[(1, 0)]), c(m[(1, 1)])]])
}

pub fn m4(m: &Matrix4C) -> Value {
    Value::Array((0..4).map(|i| Value::Array((0..4).map(|j| c(m[(i, j)])).collect())).collect())
}

/// A complex number as one CSV cell.
pub fn cell(z: Complex64) -> String {
    format!("{:e}{:+e}i", z.re, z.im)
}

#[derive(Clone, Debug, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    /// Rows `name,row,col,value` for the entries of a matrix.
    pub fn push_matrix(&mut self, name: &str, entries: impl Iterator<Item = (usize, usize, Complex64)>) {
        for (i, j, z) in entries {
            self.rows.push(vec![name.to_string(), i.to_string(), j.to_string(), cell(z)]);
        }
    }
}

pub fn entries2(m: &Matrix2C) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
    (0..4).map(move |k| (k / 2, k % 2, m[(k / 2, k % 2)]))
}

pub fn entries4(m: &Matrix4C) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
    (0..16).map(move |k| (k / 4, k % 4, m[(k / 4, k % 4)]))
}

/// What a command produced.
pub struct Report {
    pub json: Value,
    pub table: Table,
    /// Residuals worth recording in the manifest.
    pub residuals: BTreeMap<String, f64>,
    /// `Some(false)` when a verification failed.
    pub pass: Option<bool>,
}

impl Report {
    pub fn render(&self, format: Format) -> CliResult<String> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).map_err(|e| CliError::usage(e.to_string()))?;
                s.push('\n');
                Ok(s)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                let io = |e: csv::Error| CliError::usage(e.to_string());
                w.write_record(&self.table.header).map_err(io)?;
                for r in &self.table.rows {
                    w.write_record(r).map_err(io)?;
                }
                let bytes = w.into_inner().map_err(|e| CliError::usage(e.to_string()))?;
                Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
            }
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Versions {
    pub hyptr_cli: String,
    pub hyptr_core: String,
}

/// Everything needed to rerun a command, plus what the run reported.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: Command,
    pub seed: u64,
    pub format: Format,
    pub config: Config,
    pub versions: Versions,
    pub wall_time_s: f64,
    pub residuals: BTreeMap<String, f64>,
    pub pass: Option<bool>,
}

pub fn versions() -> Versions {
    // Both crates share the workspace version.
    let v = env!("CARGO_PKG_VERSION").to_string();
    Versions { hyptr_cli: v.clone(), hyptr_core: v }
}
