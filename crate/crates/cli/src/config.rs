//! Command-line and config-file parsing into a validated [`RunConfig`].
//!
//! Each subcommand owns a table of [`ParamSpec`]s. The same table builds the
//! clap arguments (and therefore `--help`), checks config-file keys and
//! resolves values: flag, then config file, then default.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Arg, ArgMatches, Command};
use serde::Deserialize;

use crate::error::CliError;
use crate::units::{parse_frequency, parse_length, parse_real, Grid};

/// Subcommands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CommandKind {
    Bogoliubov,
    Photons,
    Shift,
    Dynamics,
    Sweep,
    Reflectivity,
    Intensity,
}

impl CommandKind {
    pub const ALL: [CommandKind; 7] = [
        CommandKind::Bogoliubov,
        CommandKind::Photons,
        CommandKind::Shift,
        CommandKind::Dynamics,
        CommandKind::Sweep,
        CommandKind::Reflectivity,
        CommandKind::Intensity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Bogoliubov => "bogoliubov",
            CommandKind::Photons => "photons",
            CommandKind::Shift => "shift",
            CommandKind::Dynamics => "dynamics",
            CommandKind::Sweep => "sweep",
            CommandKind::Reflectivity => "reflectivity",
            CommandKind::Intensity => "intensity",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == name)
    }

    fn about(self) -> &'static str {
        match self {
            CommandKind::Bogoliubov => {
                "Tabulate sub-cavity Bogoliubov coefficients against the global mode index"
            }
            CommandKind::Photons => "Vacuum photon content of one left sub-cavity mode",
            CommandKind::Shift => "Vacuum frequency shift δ_R of the control atom",
            CommandKind::Dynamics => {
                "Reflective-state probability of the control atom against time"
            }
            CommandKind::Sweep => "Sweep the detuning or the split ratio",
            CommandKind::Reflectivity => {
                "Particle number after switching an imperfect mirror, against r_eff"
            }
            CommandKind::Intensity => "Cavity intensity against pump frequency",
        }
    }

    pub fn specs(self) -> &'static [ParamSpec] {
        match self {
            CommandKind::Bogoliubov => BOGOLIUBOV,
            CommandKind::Photons => PHOTONS,
            CommandKind::Shift => SHIFT,
            CommandKind::Dynamics => DYNAMICS,
            CommandKind::Sweep => SWEEP,
            CommandKind::Reflectivity => REFLECTIVITY,
            CommandKind::Intensity => INTENSITY,
        }
    }
}

impl fmt::Display for CommandKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How a parameter is read and checked.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Kind {
    /// Any finite real.
    Real,
    /// Finite and strictly positive.
    Positive,
    /// In `[0, 1]`.
    Fraction,
    /// In `(0, 1)`.
    Ratio,
    /// Angular frequency, see [`parse_frequency`].
    Frequency,
    /// Length, see [`parse_length`]; must be positive.
    Length,
    /// Integer ≥ 1.
    Count,
    /// `start:stop:count` of reals.
    RealGrid,
    /// `start:stop:count` of frequencies.
    FrequencyGrid,
    /// One of a fixed set of names.
    Choice(&'static [&'static str]),
}

impl Kind {
    fn value_name(self) -> &'static str {
        match self {
            Kind::Count => "N",
            Kind::Frequency => "FREQ",
            Kind::Length => "LENGTH",
            Kind::RealGrid | Kind::FrequencyGrid => "START:STOP:COUNT",
            Kind::Choice(_) => "NAME",
            _ => "X",
        }
    }
}

/// One parameter of a subcommand.
#[derive(Debug, Clone, Copy)]
pub struct ParamSpec {
    pub name: &'static str,
    pub kind: Kind,
    /// Help text including units.
    pub help: &'static str,
    pub default: Option<&'static str>,
    pub required: bool,
    /// The parameter is only consumed when the named choice parameter takes
    /// one of the listed values.
    pub applies: Option<(&'static str, &'static [&'static str])>,
}

const fn opt(name: &'static str, kind: Kind, help: &'static str) -> ParamSpec {
    ParamSpec {
        name,
        kind,
        help,
        default: None,
        required: false,
        applies: None,
    }
}

const fn req(name: &'static str, kind: Kind, help: &'static str) -> ParamSpec {
    ParamSpec {
        required: true,
        ..opt(name, kind, help)
    }
}

const fn def(
    name: &'static str,
    kind: Kind,
    help: &'static str,
    default: &'static str,
) -> ParamSpec {
    ParamSpec {
        default: Some(default),
        ..opt(name, kind, help)
    }
}

const fn only(spec: ParamSpec, on: &'static str, values: &'static [&'static str]) -> ParamSpec {
    ParamSpec {
        applies: Some((on, values)),
        ..spec
    }
}

const RATIO_HELP: &str = "split ratio a = r/L of the left sub-cavity (dimensionless, 0 < a < 1)";
const TRUNCATION_HELP: &str = "number of global modes N summed (integer; default max(10⁴, ⌈10/a⌉))";
const OMEGA1_HELP: &str =
    "fundamental sub-cavity angular frequency ω₁ (rad/s, or Hz with SI prefix such as 400THz, which is multiplied by 2π)";
const LENGTH_HELP: &str =
    "left sub-cavity length r, sets ω₁ = πc/r (m, or nm/um/mm suffix); alternative to --omega1";

const METHODS: &[&str] = &["delta-r", "gaussian", "rabi", "fock"];
const PERTURBATIVE: &[&str] = &["delta-r", "gaussian"];
const AXES: &[&str] = &["detuning", "ratio"];

static BOGOLIUBOV: &[ParamSpec] = &[
    req("ratio", Kind::Ratio, RATIO_HELP),
    def(
        "modes",
        Kind::Count,
        "sub-cavity modes j = 1..modes tabulated (integer)",
        "3",
    ),
    def(
        "truncation",
        Kind::Count,
        "global modes n = 1..N tabulated (integer)",
        "32",
    ),
];

static PHOTONS: &[ParamSpec] = &[
    req("ratio", Kind::Ratio, RATIO_HELP),
    def(
        "mode",
        Kind::Count,
        "left sub-cavity mode index j (integer ≥ 1)",
        "1",
    ),
    opt("truncation", Kind::Count, TRUNCATION_HELP),
];

static SHIFT: &[ParamSpec] = &[
    opt("omega1", Kind::Frequency, OMEGA1_HELP),
    opt("subcavity-length", Kind::Length, LENGTH_HELP),
    req("ratio", Kind::Ratio, RATIO_HELP),
    opt("truncation", Kind::Count, TRUNCATION_HELP),
    opt(
        "transition",
        Kind::Frequency,
        "control-atom transition frequency ν for the ratio δ_R/ν (rad/s or Hz with SI prefix)",
    ),
    opt(
        "linewidth",
        Kind::Frequency,
        "control-atom linewidth γ for the ratio δ_R/γ (rad/s or Hz with SI prefix)",
    ),
];

static DYNAMICS: &[ParamSpec] = &[
    def(
        "method",
        Kind::Choice(METHODS),
        "delta-r | gaussian (first order, mean or full photon distribution), rabi (two-level with shift δ_R), fock (truncated Fock reference solver)",
        "delta-r",
    ),
    def("omega1", Kind::Frequency, OMEGA1_HELP, "1"),
    def("ratio", Kind::Ratio, RATIO_HELP, "0.5"),
    req("coupling", Kind::Frequency, "drive coupling g (rad/s or Hz with SI prefix)"),
    def(
        "detuning",
        Kind::Frequency,
        "detuning δ = ν − ω_D of the control atom from the drive (rad/s or Hz with SI prefix)",
        "0",
    ),
    req("t-grid", Kind::RealGrid, "evolution times (s, or units of 1/ω₁ when ω₁ = 1)"),
    only(opt("truncation", Kind::Count, TRUNCATION_HELP), "method", &["delta-r", "gaussian", "rabi"]),
    only(
        def("fock-cutoff", Kind::Count, "photon-number cutoff of the reduced vacuum state (integer)", "20"),
        "method",
        PERTURBATIVE,
    ),
    only(
        def("oracle-modes", Kind::Count, "global modes kept by the Fock solver (integer ≤ 4)", "3"),
        "method",
        &["fock"],
    ),
    only(
        def("oracle-cutoff", Kind::Count, "quanta per mode kept by the Fock solver (integer ≤ 6)", "4"),
        "method",
        &["fock"],
    ),
];

static SWEEP: &[ParamSpec] = &[
    req(
        "axis",
        Kind::Choice(AXES),
        "detuning (first-order P_R against δ) or ratio (photon number and δ_R against a)",
    ),
    req(
        "grid",
        Kind::FrequencyGrid,
        "sweep values: detunings (rad/s or Hz with SI prefix) or split ratios (dimensionless)",
    ),
    def("omega1", Kind::Frequency, OMEGA1_HELP, "1"),
    opt("truncation", Kind::Count, TRUNCATION_HELP),
    only(
        def(
            "method",
            Kind::Choice(PERTURBATIVE),
            "delta-r | gaussian",
            "delta-r",
        ),
        "axis",
        &["detuning"],
    ),
    only(
        def("ratio", Kind::Ratio, RATIO_HELP, "0.5"),
        "axis",
        &["detuning"],
    ),
    only(
        req(
            "coupling",
            Kind::Frequency,
            "drive coupling g (rad/s or Hz with SI prefix)",
        ),
        "axis",
        &["detuning"],
    ),
    only(
        req("time", Kind::Positive, "interaction time t (s)"),
        "axis",
        &["detuning"],
    ),
    only(
        def(
            "fock-cutoff",
            Kind::Count,
            "photon-number cutoff of the reduced vacuum state (integer)",
            "20",
        ),
        "axis",
        &["detuning"],
    ),
];

static REFLECTIVITY: &[ParamSpec] = &[
    req(
        "reff-grid",
        Kind::RealGrid,
        "effective reflectivities r_eff (dimensionless, each in (0, 1))",
    ),
    def(
        "mode",
        Kind::Count,
        "switched sub-cavity mode index m (integer ≥ 1)",
        "1",
    ),
    def(
        "truncation",
        Kind::Count,
        "global modes n = 1..N summed (integer)",
        "400",
    ),
    def(
        "width",
        Kind::Positive,
        "cavity width a, walls at ±a/2 (natural length units)",
        "1",
    ),
];

static INTENSITY: &[ParamSpec] = &[
    req("omega1", Kind::Frequency, OMEGA1_HELP),
    req(
        "finesse",
        Kind::Positive,
        "sub-cavity finesse F (dimensionless)",
    ),
    def(
        "attenuation",
        Kind::Fraction,
        "mirror attenuation r_att, 0 ≤ r_att < 1 (dimensionless)",
        "0",
    ),
    def(
        "input-intensity",
        Kind::Positive,
        "input intensity I₀ (arbitrary units)",
        "1",
    ),
    def(
        "c-r-sq",
        Kind::Fraction,
        "reflective-state population |c_R|² (dimensionless, in [0, 1])",
        "1",
    ),
    req(
        "pump-grid",
        Kind::FrequencyGrid,
        "pump frequencies ν_p (rad/s or Hz with SI prefix)",
    ),
];

/// A resolved parameter value in natural units.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Real(f64),
    Count(usize),
    Grid(Grid),
    Choice(String),
}

impl Value {
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Value::Real(v) => serde_json::json!(v),
            Value::Count(n) => serde_json::json!(n),
            Value::Grid(g) => {
                serde_json::json!({"start": g.start, "stop": g.stop, "count": g.count})
            }
            Value::Choice(s) => serde_json::json!(s),
        }
    }
}

/// Output file formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
            Format::Svg => "svg",
        }
    }
}

fn parse_formats(text: &str) -> Result<Vec<Format>, String> {
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim) {
        let f = match item {
            "csv" => Format::Csv,
            "json" => Format::Json,
            "svg" => Format::Svg,
            other => {
                return Err(format!(
                    "unknown output format `{other}` (expected csv, json or svg)"
                ))
            }
        };
        if !out.contains(&f) {
            out.push(f);
        }
    }
    out.sort();
    Ok(out)
}

/// A fully validated run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: CommandKind,
    /// Consumed parameters only, in natural units.
    pub params: BTreeMap<String, Value>,
    /// Output stem; `None` prints JSON to stdout.
    pub output: Option<PathBuf>,
    pub formats: Vec<Format>,
}

impl RunConfig {
    pub fn get(&self, name: &str) -> Option<&Value> {
        self.params.get(name)
    }

    pub fn real(&self, name: &str) -> Option<f64> {
        match self.params.get(name) {
            Some(Value::Real(v)) => Some(*v),
            _ => None,
        }
    }

    pub fn count(&self, name: &str) -> Option<usize> {
        match self.params.get(name) {
            Some(Value::Count(v)) => Some(*v),
            _ => None,
        }
    }

    pub fn grid(&self, name: &str) -> Option<Grid> {
        match self.params.get(name) {
            Some(Value::Grid(g)) => Some(*g),
            _ => None,
        }
    }

    pub fn choice(&self, name: &str) -> Option<&str> {
        match self.params.get(name) {
            Some(Value::Choice(s)) => Some(s),
            _ => None,
        }
    }

    /// Parameter echo for the output record.
    pub fn inputs(&self) -> BTreeMap<String, serde_json::Value> {
        self.params
            .iter()
            .map(|(k, v)| (k.clone(), v.to_json()))
            .collect()
    }
}

/// Builds the clap command tree from the parameter tables.
pub fn command() -> Command {
    let mut cmd = Command::new("vacuumprobe")
        .version(env!("CARGO_PKG_VERSION"))
        .about("Vacuum photon content, frequency shift and control-atom dynamics of a cavity split by a quantum-controlled mirror")
        .after_help(
            "Frequencies: a bare number is an angular frequency in rad/s; a Hz suffix with SI prefix \
             (kHz, MHz, GHz, THz, PHz) is a cyclic frequency and is multiplied by 2π.\n\
             Grids: start:stop:count, both endpoints included.\n\
             VACUUMPROBE_THREADS caps the number of worker threads used by sweeps.",
        )
        .subcommand_required(true)
        .arg_required_else_help(true)
        .arg(
            Arg::new("config")
                .long("config")
                .value_name("PATH")
                .global(true)
                .help("JSON parameter file {\"command\", \"output\", \"format\", \"parameters\": {…}}; flags override it"),
        )
        .arg(
            Arg::new("output")
                .long("output")
                .value_name("STEM")
                .global(true)
                .help("write STEM.csv / STEM.json / STEM.svg instead of printing JSON to stdout"),
        )
        .arg(
            Arg::new("format")
                .long("format")
                .value_name("LIST")
                .global(true)
                .help("comma-separated subset of csv,json,svg (default csv,json with --output, json otherwise)"),
        );
    for kind in CommandKind::ALL {
        let mut sub = Command::new(kind.name()).about(kind.about());
        for spec in kind.specs() {
            let mut help = spec.help.to_string();
            if let Kind::Choice(values) = spec.kind {
                help.push_str(&format!(" [one of: {}]", values.join(", ")));
            }
            if let Some(d) = spec.default {
                help.push_str(&format!(" [default: {d}]"));
            }
            if spec.required {
                help.push_str(" [required]");
            }
            if let Some((on, values)) = spec.applies {
                help.push_str(&format!(" [only with --{on} {}]", values.join("|")));
            }
            sub = sub.arg(
                Arg::new(spec.name)
                    .long(spec.name)
                    .value_name(spec.kind.value_name())
                    .allow_hyphen_values(true)
                    .help(help),
            );
        }
        cmd = cmd.subcommand(sub);
    }
    cmd
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    command: Option<String>,
    output: Option<String>,
    format: Option<String>,
    #[serde(default)]
    parameters: serde_json::Map<String, serde_json::Value>,
}

/// A config file with its text kept for line lookups.
struct LoadedFile {
    path: PathBuf,
    text: String,
    config: FileConfig,
}

impl LoadedFile {
    fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let config: FileConfig = serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("{}:{}: {e}", path.display(), e.line())))?;
        Ok(LoadedFile {
            path: path.to_path_buf(),
            text,
            config,
        })
    }

    /// 1-based line of the first `"key"` in the file.
    fn line_of(&self, key: &str) -> usize {
        let needle = format!("\"{key}\"");
        self.text
            .find(&needle)
            .map(|pos| self.text[..pos].matches('\n').count() + 1)
            .unwrap_or(1)
    }

    fn at(&self, key: &str) -> String {
        format!("{}:{}", self.path.display(), self.line_of(key))
    }
}

fn parse_value(kind: Kind, text: &str) -> Result<Value, String> {
    let real = |v: f64| Ok(Value::Real(v));
    match kind {
        Kind::Real => real(parse_real(text)?),
        Kind::Positive => {
            let v = parse_real(text)?;
            if v <= 0.0 {
                return Err(format!("{v} must be positive"));
            }
            real(v)
        }
        Kind::Fraction => {
            let v = parse_real(text)?;
            if !(0.0..=1.0).contains(&v) {
                return Err(format!("{v} must lie in [0, 1]"));
            }
            real(v)
        }
        Kind::Ratio => {
            let v = parse_real(text)?;
            if !(v > 0.0 && v < 1.0) {
                return Err(format!("{v} must satisfy 0 < a < 1"));
            }
            real(v)
        }
        Kind::Frequency => real(parse_frequency(text)?),
        Kind::Length => {
            let v = parse_length(text)?;
            if v <= 0.0 {
                return Err(format!("length {v} m must be positive"));
            }
            real(v)
        }
        Kind::Count => {
            let n: usize = text
                .trim()
                .parse()
                .map_err(|_| format!("`{text}` is not a positive integer"))?;
            if n == 0 {
                return Err("must be at least 1".to_string());
            }
            Ok(Value::Count(n))
        }
        Kind::RealGrid => Ok(Value::Grid(Grid::parse(text, parse_real)?)),
        Kind::FrequencyGrid => Ok(Value::Grid(Grid::parse(text, parse_frequency)?)),
        Kind::Choice(values) => {
            if values.contains(&text.trim()) {
                Ok(Value::Choice(text.trim().to_string()))
            } else {
                Err(format!("`{text}` is not one of {}", values.join(", ")))
            }
        }
    }
}

fn json_text(v: &serde_json::Value) -> Option<String> {
    match v {
        serde_json::Value::Number(n) => Some(n.to_string()),
        serde_json::Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

enum Source {
    Flag(String),
    File(String),
    Default(&'static str),
}

/// Parses the process arguments (including the program name).
pub fn parse_config<I, T>(args: I) -> Result<RunConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let matches = command().try_get_matches_from(args)?;
    let (name, sub) = matches.subcommand().expect("subcommand is required");
    let kind = CommandKind::from_name(name).expect("subcommands come from CommandKind");
    resolve(kind, sub)
}

fn resolve(kind: CommandKind, sub: &ArgMatches) -> Result<RunConfig, CliError> {
    let file = match sub.get_one::<String>("config") {
        Some(p) => Some(LoadedFile::load(Path::new(p))?),
        None => None,
    };

    if let Some(f) = &file {
        if let Some(c) = &f.config.command {
            if c != kind.name() {
                return Err(CliError::Usage(format!(
                    "{}: config file is for command `{c}` but `{kind}` was requested",
                    f.at("command")
                )));
            }
        }
        for (key, value) in &f.config.parameters {
            let Some(_) = kind.specs().iter().find(|s| s.name == key) else {
                let known: Vec<&str> = kind.specs().iter().map(|s| s.name).collect();
                return Err(CliError::Usage(format!(
                    "{}: unknown parameter `{key}` for `{kind}` (expected one of: {})",
                    f.at(key),
                    known.join(", ")
                )));
            };
            if json_text(value).is_none() {
                return Err(CliError::Usage(format!(
                    "{}: parameter `{key}` must be a number or a string",
                    f.at(key)
                )));
            }
        }
    }

    // choices first so that applicability can be decided for the rest
    let mut ordered: Vec<&ParamSpec> = kind.specs().iter().collect();
    ordered.sort_by_key(|s| !matches!(s.kind, Kind::Choice(_)));

    let mut params = BTreeMap::new();
    for spec in ordered {
        let source = if let Some(v) = sub.get_one::<String>(spec.name) {
            Some(Source::Flag(v.clone()))
        } else if let Some(v) = file
            .as_ref()
            .and_then(|f| f.config.parameters.get(spec.name))
        {
            json_text(v).map(Source::File)
        } else {
            spec.default.map(Source::Default)
        };
        let where_given = |src: &Source| match src {
            Source::Flag(_) => format!("--{}", spec.name),
            Source::File(_) => {
                let f = file.as_ref().expect("file source implies a file");
                format!("{}: `{}`", f.at(spec.name), spec.name)
            }
            Source::Default(_) => format!("default of --{}", spec.name),
        };

        let applicable = match spec.applies {
            None => true,
            Some((on, values)) => match params.get(on) {
                Some(Value::Choice(c)) => values.contains(&c.as_str()),
                _ => false,
            },
        };
        if !applicable {
            if let Some(src @ (Source::Flag(_) | Source::File(_))) = &source {
                let (on, values) = spec.applies.expect("inapplicable implies a condition");
                let current = match params.get(on) {
                    Some(Value::Choice(c)) => c.clone(),
                    _ => "unset".to_string(),
                };
                return Err(CliError::Usage(format!(
                    "{} is not used when --{on} is {current} (only with --{on} {})",
                    where_given(src),
                    values.join("|")
                )));
            }
            continue;
        }

        match source {
            Some(src) => {
                let text = match &src {
                    Source::Flag(t) | Source::File(t) => t.as_str(),
                    Source::Default(t) => t,
                };
                let value = parse_value(spec.kind, text).map_err(|e| {
                    CliError::Usage(format!("invalid value for {}: {e}", where_given(&src)))
                })?;
                params.insert(spec.name.to_string(), value);
            }
            None if spec.required => {
                return Err(CliError::Usage(format!(
                    "missing required parameter --{} ({})",
                    spec.name, spec.help
                )));
            }
            None => {}
        }
    }

    let output = sub
        .get_one::<String>("output")
        .cloned()
        .or_else(|| file.as_ref().and_then(|f| f.config.output.clone()))
        .map(PathBuf::from);
    let format_text = sub
        .get_one::<String>("format")
        .map(|s| (s.clone(), "--format".to_string()))
        .or_else(|| {
            let f = file.as_ref()?;
            f.config.format.clone().map(|s| (s, f.at("format")))
        });
    let formats = match format_text {
        Some((text, at)) => {
            parse_formats(&text).map_err(|e| CliError::Usage(format!("{at}: {e}")))?
        }
        None if output.is_some() => vec![Format::Csv, Format::Json],
        None => vec![Format::Json],
    };
    if output.is_none() && formats != [Format::Json] {
        return Err(CliError::Usage(
            "csv and svg output need --output STEM; only json can go to stdout".to_string(),
        ));
    }

    let config = RunConfig {
        command: kind,
        params,
        output,
        formats,
    };
    cross_check(&config)?;
    Ok(config)
}

/// Constraints spanning several parameters.
fn cross_check(c: &RunConfig) -> Result<(), CliError> {
    let usage = |m: String| Err(CliError::Usage(m));
    match c.command {
        CommandKind::Shift => match (c.real("omega1"), c.real("subcavity-length")) {
            (None, None) => {
                usage("missing required parameter --omega1 (or --subcavity-length)".into())
            }
            (Some(_), Some(_)) => usage("give only one of --omega1 and --subcavity-length".into()),
            _ => Ok(()),
        },
        CommandKind::Sweep if c.choice("axis") == Some("ratio") => {
            let g = c.grid("grid").expect("grid is required");
            if g.points().iter().any(|a| !(*a > 0.0 && *a < 1.0)) {
                return usage("--grid for --axis ratio must stay inside (0, 1)".into());
            }
            Ok(())
        }
        CommandKind::Reflectivity => {
            let g = c.grid("reff-grid").expect("reff-grid is required");
            if g.points().iter().any(|r| !(*r > 0.0 && *r < 1.0)) {
                return usage("--reff-grid must stay inside (0, 1)".into());
            }
            Ok(())
        }
        _ => Ok(()),
    }
}
