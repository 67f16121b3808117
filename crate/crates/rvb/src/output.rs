//! Serialization helpers shared by the subcommands: fixed-precision CSV,
//! the JSON envelope, and atomic output writing.

use std::fmt::Display;
use std::io::Write;
use std::path::Path;
use std::time::{Duration, UNIX_EPOCH};

use anyhow::Context;
use num_rational::{BigRational, Ratio};
use serde::Serialize;
use serde_json::Value;

/// Header block common to every JSON document.
#[derive(Debug, Clone, Serialize)]
pub struct Meta {
    pub command: &'static str,
    pub version: &'static str,
    pub seed: Option<u64>,
    pub timestamp: Option<String>,
}

impl Meta {
    pub fn new(command: &'static str, seed: Option<u64>) -> Self {
        Meta {
            command,
            version: env!("CARGO_PKG_VERSION"),
            seed,
            timestamp: build_timestamp(),
        }
    }
}

/// RFC 3339 time taken from `SOURCE_DATE_EPOCH`, so identical invocations
/// stay byte-identical. Absent or unparsable values give `None`.
pub fn build_timestamp() -> Option<String> {
    let secs: u64 = std::env::var("SOURCE_DATE_EPOCH").ok()?.trim().parse().ok()?;
    let time = UNIX_EPOCH.checked_add(Duration::from_secs(secs))?;
    Some(humantime::format_rfc3339_seconds(time).to_string())
}

pub fn json_document(meta: &Meta, data: Value) -> anyhow::Result<Vec<u8>> {
    let mut bytes = serde_json::to_vec_pretty(&serde_json::json!({ "meta": meta, "data": data }))?;
    bytes.push(b'\n');
    Ok(bytes)
}

/// `num/den` in lowest terms, including integers (`"1/1"`).
pub fn rational_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn ratio_string(r: Ratio<u64>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn ratio_to_f64(r: Ratio<u64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Fixed-point text for CSV cells. Non-finite values print as `inf`, `-inf`
/// or `nan`.
pub fn fixed(x: f64, precision: u32) -> String {
    if x.is_finite() {
        let s = format!("{x:.*}", precision as usize);
        // avoid "-0.000" for values that round to zero
        if s.starts_with('-') && s[1..].bytes().all(|b| b == b'0' || b == b'.') {
            s[1..].to_string()
        } else {
            s
        }
    } else if x.is_nan() {
        "nan".to_string()
    } else if x > 0.0 {
        "inf".to_string()
    } else {
        "-inf".to_string()
    }
}

/// Finite floats as JSON numbers, anything else as `null`.
pub fn json_number(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

/// Accumulates CSV text with LF line endings.
#[derive(Debug, Default)]
pub struct CsvText {
    text: String,
}

impl CsvText {
    pub fn comment(&mut self, line: impl Display) {
        self.text.push_str(&format!("# {line}\n"));
    }

    pub fn row<I, T>(&mut self, cells: I)
    where
        I: IntoIterator<Item = T>,
        T: Display,
    {
        let cells: Vec<String> = cells.into_iter().map(|c| c.to_string()).collect();
        self.text.push_str(&cells.join(","));
        self.text.push('\n');
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.text.into_bytes()
    }
}

/// Writes to `out` through a temporary file in the same directory and a
/// rename, or to stdout when no path is given.
pub fn emit(out: Option<&Path>, bytes: &[u8]) -> anyhow::Result<()> {
    let Some(path) = out else {
        let mut stdout = std::io::stdout().lock();
        stdout.write_all(bytes)?;
        return Ok(stdout.flush()?);
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("cannot create a temporary file next to {}", path.display()))?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path)
        .with_context(|| format!("cannot write {}", path.display()))?;
    Ok(())
}
