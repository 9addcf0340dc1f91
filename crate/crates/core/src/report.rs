//! Report serialization.
//!
//! JSON floats are written with 17 significant digits in exponent form
//! (`1.2500000000000000e-1`), which round-trips every `f64` exactly.
//! Undefined statistics (for example a per-success mean with no successes)
//! are written as `null`.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde::ser::Error as _;
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

use crate::error::{Error, Result};
use crate::predicate::SolutionSet;
use crate::scalar::Real;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            _ => Err(format!("unknown format `{s}` (expected `json` or `csv`)")),
        }
    }
}

impl fmt::Display for ReportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Json => "json",
            Self::Csv => "csv",
        })
    }
}

/// Seventeen significant digits; `None` for non-finite input.
pub fn format_f64(v: f64) -> Option<String> {
    v.is_finite().then(|| format!("{v:.16e}"))
}

fn raw<S: Serializer>(v: f64, s: S) -> Result<S::Ok, S::Error> {
    match format_f64(v) {
        Some(text) => RawValue::from_string(text).map_err(S::Error::custom)?.serialize(s),
        None => s.serialize_none(),
    }
}

pub(crate) fn real<T: Real, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    raw(v.as_f64(), s)
}

pub(crate) fn opt_real<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => raw(*v, s),
        None => s.serialize_none(),
    }
}

pub(crate) fn members<S: Serializer>(set: &SolutionSet, s: S) -> Result<S::Ok, S::Error> {
    set.members().serialize(s)
}

/// Pretty-printed JSON document followed by a newline.
pub fn write_json<V: Serialize + ?Sized, W: Write + ?Sized>(value: &V, sink: &mut W) -> Result<()> {
    serde_json::to_writer_pretty(&mut *sink, value).map_err(|e| Error::Io(e.into()))?;
    sink.write_all(b"\n")?;
    sink.flush()?;
    Ok(())
}

/// Writes a header and rows of already-rendered cells. Cells never contain
/// separators in the schemas used here, so no quoting is needed.
pub fn write_csv<W: Write + ?Sized>(sink: &mut W, header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<()> {
    writeln!(sink, "{}", header.join(","))?;
    for row in rows {
        writeln!(sink, "{}", row.join(","))?;
    }
    sink.flush()?;
    Ok(())
}

pub const WITNESS_CSV_HEADER: [&str; 7] =
    ["k", "set_a", "set_b", "input_overlap", "output_overlap", "mismatch", "verdict"];

/// Witness reports as a JSON array, or one CSV row each with set members
/// separated by spaces.
pub fn emit_witnesses<T: Real, W: Write + ?Sized>(
    reports: &[crate::interference::WitnessReport<T>],
    format: ReportFormat,
    sink: &mut W,
) -> Result<()> {
    match format {
        ReportFormat::Json => write_json(reports, sink),
        ReportFormat::Csv => {
            let join = |s: &SolutionSet| s.members().iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
            let num = |v: T| format_f64(v.as_f64()).unwrap_or_default();
            write_csv(
                sink,
                &WITNESS_CSV_HEADER,
                reports.iter().map(|w| {
                    vec![
                        w.k.to_string(),
                        join(&w.set_a),
                        join(&w.set_b),
                        num(w.input_overlap),
                        num(w.output_overlap),
                        num(w.mismatch),
                        w.verdict.to_string(),
                    ]
                }),
            )
        }
    }
}
