//! Verification reports, remainder series, and their CSV/JSON encodings.

use std::fmt;
use std::io::Write;

use serde_json::{json, Map, Value};

use crate::numeric::{fmt_sig15, round_sig15};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

/// Outcome of one check: the largest violation seen over a range and where
/// it occurred. `status` is PASS iff `max_violation <= tolerance`.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub name: String,
    pub range: String,
    pub max_violation: f64,
    pub location: String,
    pub tolerance: f64,
    pub status: Status,
    pub notes: String,
}

impl VerificationReport {
    pub fn new(name: impl Into<String>, range: impl Into<String>, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            range: range.into(),
            max_violation: 0.0,
            location: "-".into(),
            tolerance,
            status: Status::Pass,
            notes: String::new(),
        }
    }

    /// Record a violation measurement; keeps the maximum.
    pub fn observe(&mut self, violation: f64, location: impl fmt::Display) {
        if violation.is_nan() || violation > self.max_violation || self.location == "-" && violation >= self.max_violation {
            self.max_violation = violation;
            self.location = location.to_string();
        }
        self.refresh();
    }

    pub fn with_notes(mut self, notes: impl Into<String>) -> Self {
        self.notes = notes.into();
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    fn refresh(&mut self) {
        self.status = if self.max_violation <= self.tolerance {
            Status::Pass
        } else {
            Status::Fail
        };
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {} over {}: max violation {} at {} (tol {})",
            self.status,
            self.name,
            self.range,
            fmt_sig15(self.max_violation),
            self.location,
            fmt_sig15(self.tolerance)
        )?;
        if !self.notes.is_empty() {
            write!(f, "; {}", self.notes)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RemainderRecord {
    pub x: f64,
    pub raw: f64,
    pub main: f64,
    pub remainder: f64,
    pub normalized: f64,
    pub normalizer: f64,
}

/// Per-x records of a sum, its main term, and the normalized remainder.
#[derive(Debug, Clone)]
pub struct RemainderSeries {
    pub name: String,
    pub normalizer_name: String,
    records: Vec<RemainderRecord>,
}

impl RemainderSeries {
    pub fn new(name: impl Into<String>, normalizer_name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            normalizer_name: normalizer_name.into(),
            records: Vec::new(),
        }
    }

    /// Append a record. `x` must exceed the previous record's `x`.
    pub fn push(&mut self, x: f64, raw: f64, main: f64, normalizer: f64) {
        if let Some(last) = self.records.last() {
            assert!(x > last.x, "series x must be strictly increasing");
        }
        let remainder = raw - main;
        self.records.push(RemainderRecord {
            x,
            raw,
            main,
            remainder,
            normalized: remainder / normalizer,
            normalizer,
        });
    }

    pub fn records(&self) -> &[RemainderRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn at(&self, x: f64) -> Option<&RemainderRecord> {
        self.records.iter().find(|r| r.x == x)
    }

    /// max |normalized| over records with x in `[lo, hi]`.
    pub fn max_abs_normalized(&self, lo: f64, hi: f64) -> f64 {
        self.records
            .iter()
            .filter(|r| r.x >= lo && r.x <= hi)
            .map(|r| r.normalized.abs())
            .fold(0.0, nan_max)
    }

    /// Growth-trend summary over `[lo, hi]`: (full-range max, top-decade
    /// max, max below the top decade) of |normalized|. When the range is
    /// narrower than a decade the below-top max is the full-range max.
    pub fn trend(&self, lo: f64, hi: f64) -> Trend {
        let top_lo = (hi / 10.0).max(lo);
        let full = self.max_abs_normalized(lo, hi);
        let below_top = if top_lo <= lo {
            full
        } else {
            self.records
                .iter()
                .filter(|r| r.x >= lo && r.x < top_lo)
                .map(|r| r.normalized.abs())
                .fold(0.0, nan_max)
        };
        Trend { full, top_decade: self.max_abs_normalized(top_lo, hi), below_top }
    }
}

/// max that lets NaN through, so a broken series cannot look bounded.
fn nan_max(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Trend {
    pub full: f64,
    pub top_decade: f64,
    pub below_top: f64,
}

impl Trend {
    /// No growth: top-decade max ≤ 2 × full-range max, both finite.
    pub fn no_growth(&self) -> bool {
        self.full.is_finite() && self.top_decade.is_finite() && self.top_decade <= 2.0 * self.full
    }

    /// top-decade max / max below the top decade (0 when both vanish).
    pub fn growth_ratio(&self) -> f64 {
        if self.top_decade == 0.0 {
            0.0
        } else {
            self.top_decade / self.below_top
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

impl std::str::FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format `{other}` (expected csv or json)")),
        }
    }
}

pub const SERIES_COLUMNS: [&str; 6] = ["x", "raw", "main", "remainder", "normalized", "normalizer"];
pub const REPORT_COLUMNS: [&str; 5] = ["name", "range", "max_violation", "location", "status"];

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn write_series<W: Write>(w: &mut W, series: &RemainderSeries, format: OutputFormat) -> std::io::Result<()> {
    match format {
        OutputFormat::Csv => {
            writeln!(w, "{}", SERIES_COLUMNS.join(","))?;
            for r in series.records() {
                writeln!(
                    w,
                    "{},{},{},{},{},{}",
                    fmt_sig15(r.x),
                    fmt_sig15(r.raw),
                    fmt_sig15(r.main),
                    fmt_sig15(r.remainder),
                    fmt_sig15(r.normalized),
                    fmt_sig15(r.normalizer)
                )?;
            }
        }
        OutputFormat::Json => {
            let col = |f: fn(&RemainderRecord) -> f64| -> Value {
                Value::Array(series.records().iter().map(|r| json!(round_sig15(f(r)))).collect())
            };
            let mut obj = Map::new();
            obj.insert("x".into(), col(|r| r.x));
            obj.insert("raw".into(), col(|r| r.raw));
            obj.insert("main".into(), col(|r| r.main));
            obj.insert("remainder".into(), col(|r| r.remainder));
            obj.insert("normalized".into(), col(|r| r.normalized));
            obj.insert("normalizer".into(), col(|r| r.normalizer));
            serde_json::to_writer_pretty(&mut *w, &Value::Object(obj))?;
            writeln!(w)?;
        }
    }
    Ok(())
}

pub fn write_reports<W: Write>(w: &mut W, reports: &[VerificationReport], format: OutputFormat) -> std::io::Result<()> {
    match format {
        OutputFormat::Csv => {
            writeln!(w, "{}", REPORT_COLUMNS.join(","))?;
            for r in reports {
                writeln!(
                    w,
                    "{},{},{},{},{}",
                    csv_field(&r.name),
                    csv_field(&r.range),
                    fmt_sig15(r.max_violation),
                    csv_field(&r.location),
                    r.status
                )?;
            }
        }
        OutputFormat::Json => {
            let mut obj = Map::new();
            obj.insert("name".into(), reports.iter().map(|r| json!(r.name)).collect());
            obj.insert("range".into(), reports.iter().map(|r| json!(r.range)).collect());
            obj.insert(
                "max_violation".into(),
                reports.iter().map(|r| json!(round_sig15(r.max_violation))).collect(),
            );
            obj.insert("location".into(), reports.iter().map(|r| json!(r.location)).collect());
            obj.insert("status".into(), reports.iter().map(|r| json!(r.status.to_string())).collect());
            serde_json::to_writer_pretty(&mut *w, &Value::Object(obj))?;
            writeln!(w)?;
        }
    }
    Ok(())
}
