//! Run configuration: a TOML file with `[model]`, `[params]` and `[command]`
//! tables of flat keys.

use std::fmt;
use std::path::Path;

use anyhow::{bail, Context};
use rdshock_core::{DiffusivityModel, Family, Model, ReactionDiffusion, ShockRule, SolutionParams, System};
use serde::Deserialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Quadratic,
    Quartic,
    Generic,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelBlock {
    pub kind: ModelKind,
    pub a: f64,
    pub b: f64,
    pub c: Option<f64>,
    pub d: Option<f64>,
    /// Ascending coefficients of `D` for `kind = "generic"`.
    pub coeffs: Option<Vec<f64>>,
}

/// `c1`/`c2`: a number, or `"phi0"` / `"-phi0"` for `±Φ(0)`.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum Constant {
    Value(f64),
    Token(String),
}

impl Constant {
    fn resolve(&self, key: &str, phi0: f64) -> anyhow::Result<f64> {
        match self {
            Constant::Value(v) => Ok(*v),
            Constant::Token(t) if t == "phi0" => Ok(phi0),
            Constant::Token(t) if t == "-phi0" => Ok(-phi0),
            Constant::Token(t) => bail!("params.{key}: expected a number, \"phi0\" or \"-phi0\", got {t:?}"),
        }
    }
}

fn default_kappa() -> f64 {
    -1.0
}

fn default_c1() -> Constant {
    Constant::Token("phi0".into())
}

fn default_c2() -> Constant {
    Constant::Value(0.0)
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsBlock {
    #[serde(default = "default_kappa")]
    pub kappa: f64,
    #[serde(default = "default_c1")]
    pub c1: Constant,
    #[serde(default = "default_c2")]
    pub c2: Constant,
    #[serde(default)]
    pub time_gauge: f64,
}

impl Default for ParamsBlock {
    fn default() -> Self {
        Self {
            kappa: default_kappa(),
            c1: default_c1(),
            c2: default_c2(),
            time_gauge: 0.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Csv,
    Json,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

/// Subcommand settings; every key is optional.
#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CommandBlock {
    pub family: Option<Family>,
    pub times: Option<Vec<f64>>,
    pub x_min: Option<f64>,
    pub x_max: Option<f64>,
    pub x_points: Option<usize>,
    pub rule: Option<ShockRule>,
    pub t_start: Option<f64>,
    pub t_end: Option<f64>,
    pub t_steps: Option<usize>,
    pub alpha_min: Option<f64>,
    pub alpha_max: Option<f64>,
    pub alpha_points: Option<usize>,
    pub scan_n: Option<usize>,
    pub trace_samples: Option<usize>,
    pub field_n: Option<usize>,
    pub u_min: Option<f64>,
    pub u_max: Option<f64>,
    pub q_min: Option<f64>,
    pub q_max: Option<f64>,
    pub curve_points: Option<usize>,
    pub out: Option<String>,
    pub format: Option<Format>,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub model: ModelBlock,
    #[serde(default)]
    pub params: ParamsBlock,
    #[serde(default)]
    pub command: CommandBlock,
}

/// A configuration problem; reported with exit code 2.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|e| ConfigError(e.to_string()))
    }

    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        RunConfig::parse(&text).with_context(|| format!("parsing {}", path.display()))
    }

    fn require(&self, key: &str, value: Option<f64>) -> Result<f64, ConfigError> {
        value.ok_or_else(|| {
            ConfigError(format!("missing key model.{key} (required for kind = {:?})", self.model.kind))
        })
    }

    pub fn build_model(&self) -> anyhow::Result<Model> {
        let m = &self.model;
        let model = match m.kind {
            ModelKind::Quadratic => DiffusivityModel::quadratic(m.a, m.b),
            ModelKind::Quartic => {
                let c = self.require("c", m.c)?;
                let d = self.require("d", m.d)?;
                DiffusivityModel::quartic(m.a, m.b, c, d)
            }
            ModelKind::Generic => {
                let coeffs = m
                    .coeffs
                    .clone()
                    .ok_or_else(|| ConfigError("missing key model.coeffs (required for kind = generic)".into()))?;
                DiffusivityModel::generic(coeffs, m.a, m.b)
            }
        };
        Ok(model?)
    }

    /// Model with resolved constants, shifted by `time_gauge`.
    pub fn build_system(&self) -> anyhow::Result<System> {
        let model = self.build_model()?;
        let phi0 = model.phi(0.0);
        let c1 = self.params.c1.resolve("c1", phi0)?;
        let c2 = self.params.c2.resolve("c2", phi0)?;
        let params = SolutionParams::new(&model, self.params.kappa, c1, c2)?.with_time_gauge(self.params.time_gauge);
        Ok(ReactionDiffusion::new(model, params))
    }

    pub fn family(&self) -> Family {
        self.command.family.unwrap_or(Family::Travelling)
    }

    pub fn times(&self) -> Vec<f64> {
        self.command.times.clone().unwrap_or_else(|| vec![0.0])
    }
}
