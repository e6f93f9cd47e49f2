//! CSV and JSON rendering of sweep records, written atomically.

use std::collections::BTreeSet;
use std::io::{self, Write};
use std::path::Path;

use tempfile::NamedTempFile;

use crate::record::{SweepRecord, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// 17 significant digits, enough to round-trip any f64.
pub fn format_real(x: f64) -> String {
    format!("{x:.16e}")
}

fn cell(v: Option<&Value>) -> String {
    match v {
        None => String::new(),
        Some(Value::Int(i)) => i.to_string(),
        Some(Value::Real(x)) => format_real(*x),
        Some(Value::Text(s)) => s.clone(),
    }
}

/// Inputs (alphabetical), concurrence, auxiliary (alphabetical), status,
/// message. Columns are the union over all records.
pub fn render_csv(records: &[SweepRecord]) -> io::Result<Vec<u8>> {
    let inputs: BTreeSet<&String> = records.iter().flat_map(|r| r.inputs.keys()).collect();
    let aux: BTreeSet<&String> = records.iter().flat_map(|r| r.auxiliary.keys()).collect();
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<&str> = inputs.iter().map(|s| s.as_str()).collect();
    header.push("concurrence");
    header.extend(aux.iter().map(|s| s.as_str()));
    header.extend(["status", "message"]);
    w.write_record(&header)?;
    for r in records {
        let mut row: Vec<String> = inputs.iter().map(|k| cell(r.inputs.get(*k))).collect();
        row.push(r.concurrence.map(format_real).unwrap_or_default());
        row.extend(aux.iter().map(|k| cell(r.auxiliary.get(*k))));
        row.push(r.status.as_str().to_owned());
        row.push(r.message.clone().unwrap_or_default());
        w.write_record(&row)?;
    }
    w.into_inner().map_err(|e| e.into_error())
}

pub fn render_json(records: &[SweepRecord]) -> io::Result<Vec<u8>> {
    let mut out = serde_json::to_vec_pretty(records)?;
    out.push(b'\n');
    Ok(out)
}

pub fn render(records: &[SweepRecord], format: Format) -> io::Result<Vec<u8>> {
    match format {
        Format::Csv => render_csv(records),
        Format::Json => render_json(records),
    }
}

/// Writes through a temporary file in the target directory and renames it
/// into place, so a failed run leaves nothing at `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
