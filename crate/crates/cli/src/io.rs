use std::collections::BTreeMap;
use std::path::Path;
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use tel_core::category::parse_rational;
use tel_core::measures::{EmpiricalMoments, ExactTable, MomentTable};
use tel_core::{Error, Result};

/// What a subcommand produced: CSV text and a JSON result.
pub struct Outcome {
    pub csv: String,
    pub json: Value,
}

/// CSV text from a header and rows.
pub fn csv_text<I, R>(header: &[&str], rows: I) -> String
where
    I: IntoIterator<Item = R>,
    R: IntoIterator,
    R::Item: AsRef<[u8]>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("writing to memory");
    for r in rows {
        w.write_record(r).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf-8 input")
}

#[derive(Serialize, Deserialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub params: Value,
    pub seed: Option<u64>,
    pub threads: usize,
    pub version: String,
    /// Seconds since the Unix epoch at start.
    pub timestamp: u64,
    pub wall_time_secs: f64,
}

impl RunManifest {
    pub fn new(subcommand: &str, params: Value, seed: Option<u64>, started: SystemTime, wall: Duration) -> Self {
        RunManifest {
            subcommand: subcommand.to_string(),
            params,
            seed,
            threads: rayon::current_num_threads(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: started.duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()),
            wall_time_secs: wall.as_secs_f64(),
        }
    }
}

fn io_err(path: &Path, e: impl std::fmt::Display) -> Error {
    Error::InvalidInput(format!("{}: {e}", path.display()))
}

/// Reads an empirical table: a `value,count` CSV histogram (moments up to
/// `max_order`) or JSON holding an empirical table, directly or under an
/// `"empirical"` key.
pub fn read_empirical(path: &Path, max_order: usize) -> Result<EmpiricalMoments> {
    let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    if text.trim_start().starts_with('{') {
        let v: Value = serde_json::from_str(&text).map_err(|e| io_err(path, e))?;
        let inner = v
            .get("result")
            .and_then(|r| r.get("empirical"))
            .or_else(|| v.get("empirical"))
            .cloned()
            .unwrap_or(v);
        return serde_json::from_value(inner).map_err(|e| io_err(path, e));
    }
    let mut hist = BTreeMap::new();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    for rec in rdr.records() {
        let rec = rec.map_err(|e| io_err(path, e))?;
        let parse = |i: usize| rec.get(i).map(str::trim).unwrap_or("");
        let v: i64 = parse(0).parse().map_err(|e| io_err(path, e))?;
        let c: u64 = parse(1).parse().map_err(|e| io_err(path, e))?;
        *hist.entry(v).or_insert(0) += c;
    }
    EmpiricalMoments::from_histogram(&hist, max_order)
}

/// Reads an `order,moment` CSV into a real exact table.
pub fn read_exact_table(path: &Path) -> Result<ExactTable> {
    let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let mut entries: Vec<(usize, BigRational)> = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| io_err(path, e))?;
        let k: usize = rec.get(0).unwrap_or("").trim().parse().map_err(|e| io_err(path, e))?;
        entries.push((k, parse_rational(rec.get(1).unwrap_or(""))?));
    }
    entries.sort_by_key(|e| e.0);
    for (i, (k, _)) in entries.iter().enumerate() {
        if *k != i {
            return Err(io_err(path, format!("orders must be 0, 1, 2, ... without gaps (found {k} at row {i})")));
        }
    }
    if entries.is_empty() {
        return Err(io_err(path, "empty table"));
    }
    Ok(MomentTable::real_unchecked(entries.into_iter().map(|e| e.1).collect()))
}
