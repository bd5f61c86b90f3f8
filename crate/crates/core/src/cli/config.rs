//! Flat `key=value` run configuration.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::discrete::{AuxCaps, MAX_ALPHABET, MAX_QUANTIZATION};
use crate::gaussian::{GaussianMacParams, Scenario, SweepGrid};

/// A configuration problem, located at a line of the file or at a `--set`
/// override.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{origin}: {msg}")]
pub struct ConfigError {
    pub origin: Origin,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Origin {
    Line(usize),
    Override(String),
    Missing,
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Origin::Line(n) => write!(f, "line {n}"),
            Origin::Override(s) => write!(f, "--set {s}"),
            Origin::Missing => f.write_str("config"),
        }
    }
}

impl ConfigError {
    fn missing(key: &str, why: &str) -> Self {
        Self {
            origin: Origin::Missing,
            msg: format!("missing required key `{key}` ({why})"),
        }
    }

    /// Line number of the offending entry, if it came from the file.
    pub fn line(&self) -> Option<usize> {
        match self.origin {
            Origin::Line(n) => Some(n),
            _ => None,
        }
    }
}

/// Every region family the front end can compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScenarioKind {
    Gaussian(Scenario),
    DiscreteNc,
    DiscreteC,
}

impl ScenarioKind {
    pub fn name(self) -> &'static str {
        match self {
            ScenarioKind::Gaussian(s) => s.name(),
            ScenarioKind::DiscreteNc => "discrete-nc",
            ScenarioKind::DiscreteC => "discrete-c",
        }
    }
}

impl FromStr for ScenarioKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "discrete-nc" => Ok(ScenarioKind::DiscreteNc),
            "discrete-c" => Ok(ScenarioKind::DiscreteC),
            other => other
                .parse::<Scenario>()
                .map(ScenarioKind::Gaussian)
                .map_err(|_| {
                    format!(
                        "unknown scenario `{other}` (expected maccm-nc, maccm-c, macce-nc, \
                         macce-c, discrete-nc or discrete-c)"
                    )
                }),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub scenario: Option<ScenarioKind>,
    pub p1: Option<f64>,
    pub p2: Option<f64>,
    pub pz: Option<f64>,
    pub ps: f64,
    pub c12: f64,
    pub c21: f64,
    pub r0: f64,
    pub grid_beta: usize,
    pub grid_alpha: usize,
    pub resolution: usize,
    pub channel_file: Option<PathBuf>,
    pub aux: AuxCaps,
    pub k: usize,
    /// Conference capacities overlaid by `fig3`.
    pub c_values: Vec<f64>,
    /// Worker threads; 0 lets the pool pick.
    pub workers: usize,
    /// Multiplier on every `verify` tolerance.
    pub tol_scale: f64,
    pub out: Option<PathBuf>,
    pub svg: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            scenario: None,
            p1: None,
            p2: None,
            pz: None,
            ps: 0.0,
            c12: 0.0,
            c21: 0.0,
            r0: 0.0,
            grid_beta: 101,
            grid_alpha: 101,
            resolution: 512,
            channel_file: None,
            aux: AuxCaps::default(),
            k: 4,
            c_values: vec![0.0, 0.5, 1.0, 2.0, 3.5],
            workers: 0,
            tol_scale: 1.0,
            out: None,
            svg: None,
        }
    }
}

pub const KEYS: &[&str] = &[
    "scenario",
    "p1",
    "p2",
    "ps",
    "pz",
    "c12",
    "c21",
    "r0",
    "grid_beta",
    "grid_alpha",
    "resolution",
    "channel_file",
    "nu",
    "nv1",
    "nv2",
    "k",
    "c_values",
    "workers",
    "tol_scale",
    "out",
    "svg",
];

fn number(v: &str) -> Result<f64, String> {
    let x: f64 = v.parse().map_err(|_| format!("`{v}` is not a number"))?;
    if !x.is_finite() {
        return Err(format!("`{v}` is not finite"));
    }
    Ok(x)
}

fn nonneg(v: &str) -> Result<f64, String> {
    let x = number(v)?;
    if x < 0.0 {
        return Err(format!("must be nonnegative, got {x}"));
    }
    Ok(x)
}

fn count(v: &str, min: usize) -> Result<usize, String> {
    let n: usize = v.parse().map_err(|_| format!("`{v}` is not a nonnegative integer"))?;
    if n < min {
        return Err(format!("must be at least {min}, got {n}"));
    }
    Ok(n)
}

fn bounded(v: &str, max: usize) -> Result<usize, String> {
    let n = count(v, 1)?;
    if n > max {
        return Err(format!("must be at most {max}, got {n}"));
    }
    Ok(n)
}

impl RunConfig {
    /// Set one key with the same validation as the file parser.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        let v = value.trim();
        match key.trim() {
            "scenario" => self.scenario = Some(v.parse()?),
            "p1" => self.p1 = Some(nonneg(v)?),
            "p2" => self.p2 = Some(nonneg(v)?),
            "ps" => self.ps = nonneg(v)?,
            "pz" => {
                let x = number(v)?;
                if x <= 0.0 {
                    return Err(format!("noise power must be positive, got {x}"));
                }
                self.pz = Some(x);
            }
            "c12" => self.c12 = nonneg(v)?,
            "c21" => self.c21 = nonneg(v)?,
            "r0" => self.r0 = nonneg(v)?,
            "grid_beta" => self.grid_beta = count(v, 2)?,
            "grid_alpha" => self.grid_alpha = count(v, 2)?,
            "resolution" => self.resolution = count(v, 2)?,
            "channel_file" => self.channel_file = Some(PathBuf::from(v)),
            "nu" => self.aux.nu = bounded(v, MAX_ALPHABET)?,
            "nv1" => self.aux.nv1 = bounded(v, MAX_ALPHABET)?,
            "nv2" => self.aux.nv2 = bounded(v, MAX_ALPHABET)?,
            "k" => self.k = bounded(v, MAX_QUANTIZATION)?,
            "c_values" => {
                let cs: Vec<f64> = v
                    .split(',')
                    .map(|c| nonneg(c.trim()))
                    .collect::<Result<_, _>>()?;
                if cs.is_empty() {
                    return Err("needs at least one capacity".into());
                }
                self.c_values = cs;
            }
            "workers" => self.workers = count(v, 0)?,
            "tol_scale" => self.tol_scale = nonneg(v)?,
            "out" => self.out = Some(PathBuf::from(v)),
            "svg" => self.svg = Some(PathBuf::from(v)),
            other => return Err(format!("unknown key `{other}`")),
        }
        Ok(())
    }

    /// Apply a `key=value` override given on the command line.
    pub fn apply_override(&mut self, kv: &str) -> Result<(), ConfigError> {
        let err = |msg: String| ConfigError {
            origin: Origin::Override(kv.to_string()),
            msg,
        };
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| err("expected key=value".into()))?;
        self.set(k, v).map_err(err)
    }

    pub fn grid(&self) -> SweepGrid {
        SweepGrid {
            beta: self.grid_beta,
            alpha: self.grid_alpha,
            resolution: self.resolution,
        }
    }

    /// Gaussian channel parameters; `p1`, `p2` and `pz` have no defaults.
    pub fn gaussian(&self) -> Result<GaussianMacParams, ConfigError> {
        const WHY: &str = "Gaussian runs need p1, p2 and pz";
        let p1 = self.p1.ok_or_else(|| ConfigError::missing("p1", WHY))?;
        let p2 = self.p2.ok_or_else(|| ConfigError::missing("p2", WHY))?;
        let pz = self.pz.ok_or_else(|| ConfigError::missing("pz", WHY))?;
        GaussianMacParams::new(p1, p2, self.ps, pz, self.c12, self.c21).map_err(|e| ConfigError {
            origin: Origin::Missing,
            msg: e.to_string(),
        })
    }

    pub fn scenario(&self) -> Result<ScenarioKind, ConfigError> {
        self.scenario
            .ok_or_else(|| ConfigError::missing("scenario", "region needs a scenario"))
    }

    pub fn channel_file(&self) -> Result<&std::path::Path, ConfigError> {
        self.channel_file
            .as_deref()
            .ok_or_else(|| ConfigError::missing("channel_file", "discrete scenarios read a channel"))
    }
}

/// Parse `key=value` lines. Blank lines and `#` comments are skipped;
/// later keys override earlier ones.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let mut cfg = RunConfig::default();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| ConfigError {
            origin: Origin::Line(i + 1),
            msg,
        };
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| err(format!("expected key=value, got `{line}`")))?;
        cfg.set(k, v).map_err(err)?;
    }
    Ok(cfg)
}
