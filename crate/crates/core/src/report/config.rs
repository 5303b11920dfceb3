use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::opcore::ModeConvention;

/// Experiments available to the batch runner.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Flow,
    Cocycle,
    IndexS1,
    WindingS3,
    Connection,
    Descent,
    TraceId,
    Invariance,
}

impl Command {
    pub const ALL: [Command; 8] = [
        Command::Flow,
        Command::Cocycle,
        Command::IndexS1,
        Command::WindingS3,
        Command::Connection,
        Command::Descent,
        Command::TraceId,
        Command::Invariance,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Flow => "flow",
            Command::Cocycle => "cocycle",
            Command::IndexS1 => "index-s1",
            Command::WindingS3 => "winding-s3",
            Command::Connection => "connection",
            Command::Descent => "descent",
            Command::TraceId => "trace-id",
            Command::Invariance => "invariance",
        }
    }

    /// Whether the experiment draws random fixtures and therefore needs a seed.
    pub fn needs_seed(self) -> bool {
        matches!(self, Command::Flow | Command::Connection | Command::TraceId | Command::Invariance)
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown command `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
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

/// Interaction profile for the flow experiment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    /// `|û(k)| = (1+|k|)^{−s}` with random phases.
    Rough,
    /// Random hermitian symbol with exponentially decaying coefficients.
    Smooth,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Standard,
    Odd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InvarianceTarget {
    Circle,
    Sphere,
}

/// Parameter axis of a sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepAxis {
    Modes,
    Depth,
    Grid,
}

impl FromStr for SweepAxis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "modes" => Ok(SweepAxis::Modes),
            "depth" => Ok(SweepAxis::Depth),
            "grid" => Ok(SweepAxis::Grid),
            _ => Err(Error::InvalidParameter(format!("unknown sweep axis `{s}` (modes, depth, grid)"))),
        }
    }
}

impl SweepAxis {
    pub fn key(self) -> &'static str {
        match self {
            SweepAxis::Modes => "modes",
            SweepAxis::Depth => "depth",
            SweepAxis::Grid => "grid",
        }
    }
}

/// One experiment's parameters. Unset options take per-command defaults.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub modes: Option<usize>,
    pub band: Option<usize>,
    pub depth: Option<usize>,
    pub lambda: Option<f64>,
    pub grid: Option<Vec<usize>>,
    pub window: Option<usize>,
    pub seed: Option<u64>,
    pub convention: Option<ModeConvention>,
    pub format: OutputFormat,
    pub output: Option<PathBuf>,
    /// Winding number or transition degree.
    pub n: Option<i64>,
    /// Roughness exponent of the rough profile.
    pub s: Option<f64>,
    pub profile: Option<Profile>,
    pub variant: Option<Variant>,
    pub samples: Option<usize>,
    pub amplitude: Option<f64>,
    pub target: Option<InvarianceTarget>,
}

/// Keys accepted by [`RunConfig::set`].
pub const KEYS: [&str; 18] = [
    "command", "modes", "band", "depth", "lambda", "grid", "window", "seed", "convention", "format", "output",
    "n", "s", "profile", "variant", "samples", "amplitude", "target",
];

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value.trim().parse().map_err(|_| Error::InvalidParameter(format!("{key}: cannot parse `{value}`")))
}

fn positive<T: FromStr + PartialOrd + Default + Copy>(key: &str, value: &str) -> Result<T> {
    let v: T = parse(key, value)?;
    if v > T::default() {
        Ok(v)
    } else {
        Err(Error::InvalidParameter(format!("{key} must be positive")))
    }
}

/// Parses `128x128x256` or `1024`.
pub fn parse_grid(value: &str) -> Result<Vec<usize>> {
    value.split('x').map(|p| positive::<usize>("grid", p)).collect()
}

pub fn parse_convention(value: &str) -> Result<ModeConvention> {
    match value.trim() {
        "half-integer" | "half" => Ok(ModeConvention::HalfInteger),
        "integer" => Ok(ModeConvention::IntegerNonnegPlus),
        v => Err(Error::InvalidParameter(format!("convention: `{v}` (half-integer, integer)"))),
    }
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            modes: None,
            band: None,
            depth: None,
            lambda: None,
            grid: None,
            window: None,
            seed: None,
            convention: None,
            format: OutputFormat::Csv,
            output: None,
            n: None,
            s: None,
            profile: None,
            variant: None,
            samples: None,
            amplitude: None,
            target: None,
        }
    }

    /// Sets one `key=value` setting, validating the value.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let v = value.trim();
        match key.trim() {
            "command" => self.command = v.parse()?,
            "modes" => self.modes = Some(positive("modes", v)?),
            "band" => self.band = Some(positive("band", v)?),
            "depth" => self.depth = Some(parse("depth", v)?),
            "lambda" => {
                let l: f64 = parse("lambda", v)?;
                if !(l >= 0.0 && l.is_finite()) {
                    return Err(Error::InvalidParameter("lambda must be nonnegative".into()));
                }
                self.lambda = Some(l);
            }
            "grid" => self.grid = Some(parse_grid(v)?),
            "window" => self.window = Some(positive("window", v)?),
            "seed" => self.seed = Some(parse("seed", v)?),
            "convention" => self.convention = Some(parse_convention(v)?),
            "format" => {
                self.format = match v {
                    "csv" => OutputFormat::Csv,
                    "json" => OutputFormat::Json,
                    _ => return Err(Error::InvalidParameter(format!("format: `{v}` (csv, json)"))),
                }
            }
            "output" => self.output = Some(PathBuf::from(v)),
            "n" | "m" => self.n = Some(parse("n", v)?),
            "s" => {
                let s: f64 = positive("s", v)?;
                if !s.is_finite() {
                    return Err(Error::InvalidParameter("s must be finite".into()));
                }
                self.s = Some(s);
            }
            "profile" => {
                self.profile = Some(match v {
                    "rough" => Profile::Rough,
                    "smooth" => Profile::Smooth,
                    _ => return Err(Error::InvalidParameter(format!("profile: `{v}` (rough, smooth)"))),
                })
            }
            "variant" => {
                self.variant = Some(match v {
                    "standard" => Variant::Standard,
                    "odd" => Variant::Odd,
                    _ => return Err(Error::InvalidParameter(format!("variant: `{v}` (standard, odd)"))),
                })
            }
            "samples" => self.samples = Some(positive("samples", v)?),
            "amplitude" => {
                let a: f64 = positive("amplitude", v)?;
                if !a.is_finite() {
                    return Err(Error::InvalidParameter("amplitude must be finite".into()));
                }
                self.amplitude = Some(a);
            }
            "target" => {
                self.target = Some(match v {
                    "circle" => InvarianceTarget::Circle,
                    "sphere" => InvarianceTarget::Sphere,
                    _ => return Err(Error::InvalidParameter(format!("target: `{v}` (circle, sphere)"))),
                })
            }
            k => return Err(Error::InvalidParameter(format!("unknown key `{k}`"))),
        }
        Ok(())
    }

    /// Parses flat `key=value` lines; `#` starts a comment. A `command` key
    /// is required unless `fallback` supplies one.
    pub fn from_config_text(text: &str, fallback: Option<Command>) -> Result<Self> {
        let mut pairs = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::InvalidParameter(format!("config line {}: expected key=value", i + 1)))?;
            pairs.push((k.trim().to_string(), v.trim().to_string()));
        }
        let command = match pairs.iter().rev().find(|(k, _)| k == "command") {
            Some((_, v)) => v.parse()?,
            None => fallback.ok_or_else(|| Error::InvalidParameter("config names no command".into()))?,
        };
        let mut cfg = RunConfig::new(command);
        for (k, v) in pairs.iter().filter(|(k, _)| k != "command") {
            cfg.set(k, v)?;
        }
        Ok(cfg)
    }

    /// Checks cross-field requirements before a run.
    pub fn validate(&self) -> Result<()> {
        if self.command.needs_seed() && self.seed.is_none() {
            return Err(Error::InvalidParameter(format!("{} needs a seed", self.command)));
        }
        if let Some(g) = &self.grid {
            let want = if self.command == Command::WindingS3 { 3 } else { 1 };
            if g.len() != want {
                return Err(Error::InvalidParameter(format!("{} expects a grid with {want} size(s)", self.command)));
            }
        }
        Ok(())
    }

    pub fn convention_or(&self, default: ModeConvention) -> ModeConvention {
        self.convention.unwrap_or(default)
    }
}
