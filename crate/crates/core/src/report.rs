//! Report rows and their CSV/JSON serialization.

use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// CSV header; JSON objects use the same field names.
pub const CSV_HEADER: &str = "suite,quantity,computed,target,provenance,tolerance,pass";

/// Source of a row's target value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Paper,
    Derived,
    Trivial,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Paper => "paper",
            Provenance::Derived => "derived",
            Provenance::Trivial => "trivial",
        })
    }
}

/// How `pass` is decided from `computed`, `target` and `tolerance`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    /// `|computed − target| ≤ tolerance`.
    Absolute,
    /// `|computed − target| ≤ tolerance · |target|`.
    Relative,
    /// `computed ≤ target + tolerance`.
    AtMost,
}

/// One verified quantity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub suite: String,
    pub quantity: String,
    pub computed: f64,
    pub target: f64,
    pub provenance: Provenance,
    pub tolerance: f64,
    pub pass: bool,
}

impl ReportRow {
    pub fn new(suite: &str, quantity: impl Into<String>, computed: f64, target: f64, provenance: Provenance, tolerance: f64, check: Check) -> Self {
        let gap = (computed - target).abs();
        let pass = match check {
            Check::Absolute => gap <= tolerance,
            Check::Relative => gap <= tolerance * target.abs(),
            Check::AtMost => computed <= target + tolerance,
        };
        Self { suite: suite.into(), quantity: quantity.into(), computed, target, provenance, tolerance, pass }
    }

    /// Exact boolean outcome recorded as `1` or `0` against target `1`.
    pub fn flag(suite: &str, quantity: impl Into<String>, ok: bool, provenance: Provenance) -> Self {
        Self::new(suite, quantity, if ok { 1.0 } else { 0.0 }, 1.0, provenance, 0.0, Check::Absolute)
    }
}

/// Output format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(invalid(format!("unknown format `{other}`"))),
        }
    }
}

/// 17 significant digits; non-finite values are spelled out.
pub fn format_number(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.16e}")
    }
}

/// Rows sorted by suite, then quantity.
pub fn sorted_rows(rows: &[ReportRow]) -> Vec<ReportRow> {
    let mut out = rows.to_vec();
    out.sort_by(|a, b| (a.suite.as_str(), a.quantity.as_str()).cmp(&(b.suite.as_str(), b.quantity.as_str())));
    out
}

pub fn render(rows: &[ReportRow], format: Format) -> Result<String> {
    if rows.is_empty() {
        return Err(Error::EmptyReport);
    }
    let rows = sorted_rows(rows);
    match format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
            w.write_record(CSV_HEADER.split(','))?;
            for r in &rows {
                w.write_record([
                    r.suite.clone(),
                    r.quantity.clone(),
                    format_number(r.computed),
                    format_number(r.target),
                    r.provenance.to_string(),
                    format_number(r.tolerance),
                    r.pass.to_string(),
                ])?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
        }
        Format::Json => {
            let num = |x: f64| if x.is_finite() { format_number(x) } else { serde_json::to_string(&format_number(x)).unwrap_or_default() };
            let objs: Vec<String> = rows
                .iter()
                .map(|r| {
                    format!(
                        "  {{\"suite\": {}, \"quantity\": {}, \"computed\": {}, \"target\": {}, \"provenance\": \"{}\", \"tolerance\": {}, \"pass\": {}}}",
                        serde_json::to_string(&r.suite).unwrap_or_default(),
                        serde_json::to_string(&r.quantity).unwrap_or_default(),
                        num(r.computed),
                        num(r.target),
                        r.provenance,
                        num(r.tolerance),
                        r.pass
                    )
                })
                .collect();
            Ok(format!("[\n{}\n]\n", objs.join(",\n")))
        }
    }
}

/// Writes the rendered table; empty input is an error and creates no file.
pub fn emit_table(rows: &[ReportRow], format: Format, path: &Path) -> Result<()> {
    let text = render(rows, format)?;
    fs::write(path, text)?;
    Ok(())
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows() -> Vec<ReportRow> {
        vec![
            ReportRow::new("b", "x, with comma", 1.0, 1.0, Provenance::Derived, 1e-8, Check::Relative),
            ReportRow::new("a", "z", 0.1, 0.0, Provenance::Paper, 1.0, Check::AtMost),
            ReportRow::new("a", "y", f64::INFINITY, 0.0, Provenance::Trivial, 0.0, Check::Absolute),
        ]
    }

    #[test]
    fn csv_layout() {
        let text = render(&rows(), Format::Csv).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert!(lines[1].starts_with("a,y,inf,"));
        assert!(lines[2].starts_with("a,z,1.0000000000000001e-1,"));
        assert!(lines[3].starts_with("b,\"x, with comma\""));
        assert_eq!(lines.len(), 4);
    }

    #[test]
    fn json_parses_and_matches_csv() {
        let text = render(&rows(), Format::Json).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        let arr = v.as_array().unwrap();
        assert_eq!(arr.len(), 3);
        assert_eq!(arr[0]["computed"], "inf");
        assert_eq!(arr[2]["pass"], true);
        assert_eq!(arr[1]["provenance"], "paper");
    }

    #[test]
    fn empty_rows_write_nothing() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("out.csv");
        assert!(matches!(emit_table(&[], Format::Csv, &p), Err(Error::EmptyReport)));
        assert!(!p.exists());
        emit_table(&rows(), Format::Csv, &p).unwrap();
        let first = fs::read(&p).unwrap();
        emit_table(&rows(), Format::Csv, &p).unwrap();
        assert_eq!(first, fs::read(&p).unwrap());
    }

    #[test]
    fn checks() {
        assert!(ReportRow::new("s", "q", 1.0 + 1e-9, 1.0, Provenance::Paper, 1e-8, Check::Relative).pass);
        assert!(!ReportRow::new("s", "q", 2e-7, 0.0, Provenance::Paper, 1e-7, Check::AtMost).pass);
        assert!(ReportRow::flag("s", "q", true, Provenance::Trivial).pass);
    }
}
