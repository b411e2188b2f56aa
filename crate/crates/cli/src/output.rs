//! Output records and their CSV, JSON and SVG renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use vacuumprobe::{ParamValue, SweepResult};

use crate::config::Format;
use crate::error::CliError;

pub const SCHEMA_VERSION: &str = "1";

/// Computed results: a sweep or a set of named scalars.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(
    tag = "kind",
    content = "data",
    rename_all = "snake_case",
    deny_unknown_fields
)]
pub enum Results {
    Sweep(SweepResult),
    Scalars(BTreeMap<String, ParamValue>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    /// UTC, RFC 3339. Excluded from determinism comparisons.
    pub timestamp: String,
}

impl Provenance {
    pub fn now() -> Self {
        let secs = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        Provenance {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: rfc3339(secs),
        }
    }
}

/// Formats Unix seconds as `YYYY-MM-DDTHH:MM:SSZ`.
fn rfc3339(secs: u64) -> String {
    let days = (secs / 86_400) as i64;
    let rem = secs % 86_400;
    // civil-from-days, proleptic Gregorian calendar
    let z = days + 719_468;
    let era = z.div_euclid(146_097);
    let doe = z - era * 146_097;
    let yoe = (doe - doe / 1460 + doe / 36_524 - doe / 146_096) / 365;
    let doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    let mp = (5 * doy + 2) / 153;
    let day = doy - (153 * mp + 2) / 5 + 1;
    let month = if mp < 10 { mp + 3 } else { mp - 9 };
    let year = yoe + era * 400 + i64::from(month <= 2);
    format!(
        "{year:04}-{month:02}-{day:02}T{:02}:{:02}:{:02}Z",
        rem / 3600,
        rem / 60 % 60,
        rem % 60
    )
}

/// Everything a run produced, with its inputs echoed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputRecord {
    pub schema_version: String,
    pub command: String,
    pub inputs: BTreeMap<String, serde_json::Value>,
    pub results: Results,
    pub provenance: Provenance,
}

impl OutputRecord {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self)
            .expect("records contain only finite numbers and strings");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Full-precision rendering; 17 significant digits round-trip every `f64`.
pub fn format_number(v: f64) -> String {
    format!("{v:.16e}")
}

fn format_param(v: &ParamValue) -> String {
    match v {
        ParamValue::Flag(b) => b.to_string(),
        ParamValue::Integer(i) => i.to_string(),
        ParamValue::Number(x) => format_number(*x),
        ParamValue::Text(t) => t.clone(),
    }
}

pub fn to_csv(results: &Results) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    match results {
        Results::Sweep(s) => {
            let mut header = vec![s.axis_name.as_str()];
            header.extend(s.observables.iter().map(|o| o.name.as_str()));
            w.write_record(&header).expect("in-memory write");
            for (i, x) in s.axis_values.iter().enumerate() {
                let mut row = vec![format_number(*x)];
                row.extend(s.observables.iter().map(|o| format_number(o.values[i])));
                w.write_record(&row).expect("in-memory write");
            }
        }
        Results::Scalars(map) => {
            w.write_record(["quantity", "value"])
                .expect("in-memory write");
            for (k, v) in map {
                w.write_record([k.clone(), format_param(v)])
                    .expect("in-memory write");
            }
        }
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv of utf-8 fields")
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// One line chart per observable, stacked vertically.
pub fn to_svg(sweep: &SweepResult) -> String {
    const W: f64 = 640.0;
    const H: f64 = 240.0;
    const LEFT: f64 = 80.0;
    const RIGHT: f64 = 20.0;
    const TOP: f64 = 30.0;
    const BOTTOM: f64 = 45.0;
    let panels = sweep.observables.len().max(1);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{}" viewBox="0 0 {W} {}" font-family="sans-serif" font-size="12">"#,
        H * panels as f64,
        H * panels as f64
    );
    let range = |v: &[f64]| {
        let finite = v.iter().copied().filter(|x| x.is_finite());
        let lo = finite.clone().fold(f64::INFINITY, f64::min);
        let hi = finite.fold(f64::NEG_INFINITY, f64::max);
        match (lo.is_finite(), hi > lo) {
            (false, _) => (0.0, 1.0),
            (true, true) => (lo, hi),
            (true, false) => (lo - 0.5, lo + 0.5),
        }
    };
    let (x0, x1) = range(&sweep.axis_values);
    let xs = |x: f64| LEFT + (x - x0) / (x1 - x0) * (W - LEFT - RIGHT);
    for (p, obs) in sweep.observables.iter().enumerate() {
        let top = H * p as f64;
        let (y0, y1) = range(&obs.values);
        let ys = |y: f64| top + TOP + (1.0 - (y - y0) / (y1 - y0)) * (H - TOP - BOTTOM);
        let name = escape(&obs.name);
        let axis = escape(&sweep.axis_name);
        let _ = writeln!(out, r#"  <g>"#);
        let _ = writeln!(
            out,
            r#"    <rect x="{LEFT}" y="{}" width="{}" height="{}" fill="none" stroke="black"/>"#,
            top + TOP,
            W - LEFT - RIGHT,
            H - TOP - BOTTOM
        );
        let _ = writeln!(
            out,
            r#"    <text x="{}" y="{}" text-anchor="middle">{name}</text>"#,
            W / 2.0,
            top + 18.0
        );
        let _ = writeln!(
            out,
            r#"    <text x="{}" y="{}" text-anchor="middle">{axis}</text>"#,
            (LEFT + W - RIGHT) / 2.0,
            top + H - 8.0
        );
        for (value, y) in [(y1, top + TOP + 4.0), (y0, top + H - BOTTOM)] {
            let _ = writeln!(
                out,
                r#"    <text x="{}" y="{y}" text-anchor="end">{value:.4e}</text>"#,
                LEFT - 4.0
            );
        }
        for (value, anchor) in [(x0, "start"), (x1, "end")] {
            let x = if anchor == "start" { LEFT } else { W - RIGHT };
            let _ = writeln!(
                out,
                r#"    <text x="{x}" y="{}" text-anchor="{anchor}">{value:.4e}</text>"#,
                top + H - BOTTOM + 14.0
            );
        }
        let points: Vec<String> = sweep
            .axis_values
            .iter()
            .zip(&obs.values)
            .filter(|(x, y)| x.is_finite() && y.is_finite())
            .map(|(x, y)| format!("{:.2},{:.2}", xs(*x), ys(*y)))
            .collect();
        if points.len() == 1 {
            let (px, py) = points[0].split_once(',').expect("formatted as x,y");
            let _ = writeln!(
                out,
                r#"    <circle cx="{px}" cy="{py}" r="3" fill="steelblue"/>"#
            );
        } else {
            let _ = writeln!(
                out,
                r#"    <polyline fill="none" stroke="steelblue" stroke-width="1.5" points="{}"/>"#,
                points.join(" ")
            );
        }
        let _ = writeln!(out, r#"  </g>"#);
    }
    out.push_str("</svg>\n");
    out
}

/// Path `STEM.ext`.
pub fn output_path(stem: &Path, format: Format) -> PathBuf {
    let mut s = stem.as_os_str().to_os_string();
    s.push(".");
    s.push(format.extension());
    PathBuf::from(s)
}

/// Writes the requested formats next to `stem` and returns the paths written.
pub fn write_outputs(
    record: &OutputRecord,
    stem: &Path,
    formats: &[Format],
) -> Result<Vec<PathBuf>, CliError> {
    let mut written = Vec::new();
    for &format in formats {
        let contents = match format {
            Format::Csv => to_csv(&record.results),
            Format::Json => record.to_json(),
            Format::Svg => match &record.results {
                Results::Sweep(s) => to_svg(s),
                Results::Scalars(_) => {
                    return Err(CliError::Usage(format!(
                        "`{}` produces scalars; svg output needs a sweep",
                        record.command
                    )))
                }
            },
        };
        let path = output_path(stem, format);
        std::fs::write(&path, contents).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?;
        written.push(path);
    }
    Ok(written)
}
