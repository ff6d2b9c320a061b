//! Result records, trace files and number formatting.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use alphacap::ConvergenceTrace;
use anyhow::{Context, Result};
use serde::Serialize;

/// Rounds to 12 significant digits so that the printed JSON re-parses to the
/// same value.
pub fn sig12(v: f64) -> f64 {
    if !v.is_finite() || v == 0.0 {
        return v;
    }
    format!("{v:.11e}").parse().expect("formatted float parses")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Units {
    Nats,
    Bits,
}

impl Units {
    pub fn from_flag(bits: bool) -> Self {
        if bits {
            Units::Bits
        } else {
            Units::Nats
        }
    }

    /// Converts a value in nats.
    pub fn convert(self, nats: f64) -> f64 {
        match self {
            Units::Nats => nats,
            Units::Bits => nats / std::f64::consts::LN_2,
        }
    }
}

/// One solver run. Fields are declared in alphabetical order, which is also
/// the serialization order, so records survive a round trip through a
/// generic JSON value unchanged.
#[derive(Debug, Clone, Serialize)]
pub struct RunRecord {
    pub algorithm: &'static str,
    pub alpha: f64,
    pub channel_digest: String,
    pub epsilon: f64,
    pub init: &'static str,
    pub iterations: usize,
    pub termination: &'static str,
    pub units: Units,
    pub value: f64,
    pub wall_time_ms: f64,
}

impl RunRecord {
    pub fn rounded(mut self) -> Self {
        self.alpha = sig12(self.alpha);
        self.epsilon = sig12(self.epsilon);
        self.value = sig12(self.value);
        self.wall_time_ms = sig12(self.wall_time_ms);
        self
    }
}

pub fn to_json<S: Serialize>(value: &S) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("records serialize");
    s.push('\n');
    s
}

/// Writes `k,F` rows, one per recorded iterate.
pub fn write_trace(path: &Path, trace: &ConvergenceTrace<f64>) -> Result<()> {
    let mut out = String::with_capacity(24 * (trace.len() + 1));
    out.push_str("k,F\n");
    for (k, f) in trace.iter() {
        writeln!(out, "{k},{f}").unwrap();
    }
    write_file(path, out.as_bytes())
}

pub fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut f =
        fs::File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
    f.write_all(bytes)
        .with_context(|| format!("cannot write {}", path.display()))
}

/// Table-style cell: value to nine decimals and the iteration count.
pub fn cell(value: f64, iterations: usize) -> String {
    format!("({value:.9}, {iterations})")
}

/// Left-aligned columns separated by two spaces.
pub fn align(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(c, s)| format!("{s:<w$}", w = widths[c]))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}
