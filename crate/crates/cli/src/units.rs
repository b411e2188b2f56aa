//! Laboratory units at the command-line boundary.
//!
//! Everything past this module is in natural units: angular frequencies in
//! rad/s, times in seconds, lengths turned into `ω₁ = πc/r`.

use std::f64::consts::PI;

/// Speed of light in m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

const FREQUENCY_SUFFIXES: [(&str, f64); 6] = [
    ("PHz", 1e15),
    ("THz", 1e12),
    ("GHz", 1e9),
    ("MHz", 1e6),
    ("kHz", 1e3),
    ("Hz", 1.0),
];

const LENGTH_SUFFIXES: [(&str, f64); 5] = [
    ("nm", 1e-9),
    ("um", 1e-6),
    ("µm", 1e-6),
    ("mm", 1e-3),
    ("m", 1.0),
];

fn number(text: &str) -> Result<f64, String> {
    let v: f64 = text
        .trim()
        .parse()
        .map_err(|_| format!("`{text}` is not a number"))?;
    if !v.is_finite() {
        return Err(format!("`{text}` is not finite"));
    }
    Ok(v)
}

/// Plain real number.
pub fn parse_real(text: &str) -> Result<f64, String> {
    number(text)
}

/// Angular frequency. A bare number is taken as rad/s; `Hz` with an optional
/// SI prefix (`kHz` … `PHz`) is a cyclic frequency and is multiplied by 2π.
pub fn parse_frequency(text: &str) -> Result<f64, String> {
    let t = text.trim();
    if let Some(stripped) = t.strip_suffix("rad/s") {
        return number(stripped);
    }
    for (suffix, scale) in FREQUENCY_SUFFIXES {
        if let Some(stripped) = t.strip_suffix(suffix) {
            return Ok(2.0 * PI * scale * number(stripped)?);
        }
    }
    number(t).map_err(|e| format!("{e} (use rad/s or a Hz suffix such as 400THz)"))
}

/// Length in metres; accepts `m`, `mm`, `um`/`µm` and `nm` suffixes.
pub fn parse_length(text: &str) -> Result<f64, String> {
    let t = text.trim();
    for (suffix, scale) in LENGTH_SUFFIXES {
        if let Some(stripped) = t.strip_suffix(suffix) {
            return Ok(scale * number(stripped)?);
        }
    }
    number(t)
}

/// Fundamental angular frequency `πc/r` of a sub-cavity of length `r` metres.
pub fn omega1_from_length(length: f64) -> f64 {
    PI * SPEED_OF_LIGHT / length
}

/// Evenly spaced grid written `start:stop:count`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Grid {
    /// Parses `start:stop:count`, reading both endpoints with `endpoint`.
    pub fn parse(text: &str, endpoint: fn(&str) -> Result<f64, String>) -> Result<Grid, String> {
        let parts: Vec<&str> = text.split(':').collect();
        let [start, stop, count] = parts.as_slice() else {
            return Err(format!("grid `{text}` must have the form start:stop:count"));
        };
        let count: usize = count
            .trim()
            .parse()
            .map_err(|_| format!("grid count `{count}` is not a non-negative integer"))?;
        if count == 0 {
            return Err(format!("grid `{text}` is empty (count must be at least 1)"));
        }
        let start = endpoint(start)?;
        let stop = endpoint(stop)?;
        if count == 1 && start != stop {
            return Err(format!(
                "grid `{text}` has one point but distinct endpoints"
            ));
        }
        Ok(Grid { start, stop, count })
    }

    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i + 1 == self.count {
                    self.stop
                } else {
                    self.start + step * i as f64
                }
            })
            .collect()
    }
}
