//! Scenario configuration: a single strict JSON document.
//!
//! ```json
//! {
//!   "scenario": "pulse",
//!   "params": { "e0": 1.0, "f0": 0.1, "n_period": 1 },
//!   "grid": { "t_start": 0.0, "steps": 2000 },
//!   "mode": "analytic",
//!   "output": { "path": "fig1.csv", "format": "csv" }
//! }
//! ```
//!
//! Unknown keys anywhere are rejected. `grid.t_end` defaults to one period of
//! the drive (π/Ω for Rabi, T for the pulse, the last sample for a sampled
//! drive), `grid.steps` to `$QDRIVE_STEPS_DEFAULT` or 4096.

use std::path::{Path, PathBuf};

use qdrive_core::{check_switch_alignment, Complex, Error as CoreError, PulseParams, RabiParams, TimeGrid};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const STEPS_ENV: &str = "QDRIVE_STEPS_DEFAULT";
pub const BUILTIN_STEPS: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Scenario {
    Rabi,
    Pulse,
    Sampled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Sample the closed-form solution.
    Analytic,
    /// Propagate with RK4.
    Numeric,
    /// Run both and compare.
    Verify,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    #[serde(default)]
    pub t_start: f64,
    #[serde(default)]
    pub t_end: Option<f64>,
    #[serde(default)]
    pub steps: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    /// Stdout when absent.
    #[serde(default)]
    pub path: Option<PathBuf>,
    #[serde(default)]
    pub format: OutputFormat,
}

/// A sampled drive read from a CSV file, see [`crate::io::read_drive_csv`].
#[derive(Clone, Debug, PartialEq)]
pub struct SampledSpec {
    pub drive_file: PathBuf,
    /// Initial state entries in CSV column order
    /// (`rho00_re, rho00_im, rho01_re, …, rho11_im`); ground state when absent.
    pub rho0: Option<[f64; 8]>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ScenarioParams {
    Rabi(RabiParams),
    Pulse(PulseParams),
    Sampled(SampledSpec),
}

impl ScenarioParams {
    pub fn scenario(&self) -> Scenario {
        match self {
            ScenarioParams::Rabi(_) => Scenario::Rabi,
            ScenarioParams::Pulse(_) => Scenario::Pulse,
            ScenarioParams::Sampled(_) => Scenario::Sampled,
        }
    }
}

/// A validated scenario.
#[derive(Clone, Debug, PartialEq)]
pub struct ScenarioConfig {
    pub params: ScenarioParams,
    pub grid: GridSpec,
    pub mode: Mode,
    pub output: OutputSpec,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    scenario: Scenario,
    params: serde_json::Value,
    #[serde(default)]
    grid: GridSpec,
    #[serde(default)]
    mode: Option<Mode>,
    #[serde(default)]
    output: OutputSpec,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RabiBlock {
    e_g: f64,
    e_e: f64,
    omega0: f64,
    coupling: CouplingBlock,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CouplingBlock {
    re: f64,
    #[serde(default)]
    im: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PulseBlock {
    e0: f64,
    f0: f64,
    n_period: u32,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SampledBlock {
    drive_file: PathBuf,
    #[serde(default)]
    rho0: Option<Vec<f64>>,
}

/// Maps a core parameter error onto a `params.<field>` message.
pub(crate) fn param_error(err: CoreError) -> CliError {
    match err {
        CoreError::BadParam { name, value } => CliError::config(format!("params.{name}: invalid value {value}")),
        CoreError::NotFinite { what } => CliError::config(format!("params: {what} is not finite")),
        other => CliError::config(format!("params: {other}")),
    }
}

pub fn rabi_params(e_g: f64, e_e: f64, omega0: f64, coupling: Complex) -> Result<ScenarioParams, CliError> {
    RabiParams::new(e_g, e_e, omega0, coupling).map(ScenarioParams::Rabi).map_err(param_error)
}

pub fn pulse_params(e0: f64, f0: f64, n_period: u32) -> Result<ScenarioParams, CliError> {
    PulseParams::new(e0, f0, n_period).map(ScenarioParams::Pulse).map_err(param_error)
}

pub fn sampled_params(drive_file: PathBuf, rho0: Option<Vec<f64>>) -> Result<ScenarioParams, CliError> {
    let rho0 = match rho0 {
        None => None,
        Some(v) => Some(<[f64; 8]>::try_from(v.as_slice()).map_err(|_| {
            CliError::config(format!("params.rho0: expected 8 numbers, got {}", v.len()))
        })?),
    };
    Ok(ScenarioParams::Sampled(SampledSpec { drive_file, rho0 }))
}

fn parse_block<T: serde::de::DeserializeOwned>(value: serde_json::Value) -> Result<T, CliError> {
    serde_json::from_value(value).map_err(|e| CliError::config(format!("params: {e}")))
}

impl ScenarioConfig {
    /// Builds and validates a config. `mode` defaults to analytic, or numeric
    /// for sampled drives.
    pub fn new(params: ScenarioParams, grid: GridSpec, mode: Option<Mode>, output: OutputSpec) -> Result<Self, CliError> {
        let mode = mode.unwrap_or(match params {
            ScenarioParams::Sampled(_) => Mode::Numeric,
            _ => Mode::Analytic,
        });
        let cfg = ScenarioConfig { params, grid, mode, output };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_json_str(s: &str) -> Result<Self, CliError> {
        let raw: RawConfig = serde_json::from_str(s).map_err(|e| CliError::config(e.to_string()))?;
        let params = match raw.scenario {
            Scenario::Rabi => {
                let b: RabiBlock = parse_block(raw.params)?;
                rabi_params(b.e_g, b.e_e, b.omega0, Complex::new(b.coupling.re, b.coupling.im))?
            }
            Scenario::Pulse => {
                let b: PulseBlock = parse_block(raw.params)?;
                pulse_params(b.e0, b.f0, b.n_period)?
            }
            Scenario::Sampled => {
                let b: SampledBlock = parse_block(raw.params)?;
                sampled_params(b.drive_file, b.rho0)?
            }
        };
        ScenarioConfig::new(params, raw.grid, raw.mode, raw.output)
    }

    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::from_json_str(&text)
    }

    pub fn scenario(&self) -> Scenario {
        self.params.scenario()
    }

    fn validate(&self) -> Result<(), CliError> {
        if self.grid.steps == Some(0) {
            return Err(CliError::config("grid.steps: must be at least 1"));
        }
        if !self.grid.t_start.is_finite() {
            return Err(CliError::config("grid.t_start: must be finite"));
        }
        if let Some(t_end) = self.grid.t_end {
            if !(t_end.is_finite() && t_end > self.grid.t_start) {
                return Err(CliError::config(format!(
                    "grid.t_end: must exceed t_start = {} (got {t_end})",
                    self.grid.t_start
                )));
            }
        }
        match (&self.params, self.mode) {
            (ScenarioParams::Sampled(_), Mode::Analytic | Mode::Verify) => {
                return Err(CliError::config("mode: a sampled drive has no closed form; use numeric"));
            }
            (ScenarioParams::Pulse(p), Mode::Numeric | Mode::Verify) => {
                let grid = self.resolve_grid(None)?;
                check_switch_alignment(p, &grid).map_err(|e| {
                    CliError::config(format!("grid.steps: nodes must fall on every switching time kT/2: {e}"))
                })?;
            }
            _ => {}
        }
        Ok(())
    }

    /// Resolves defaults into a concrete grid. `sampled_end` is the last
    /// sample time of a loaded sampled drive.
    pub fn resolve_grid(&self, sampled_end: Option<f64>) -> Result<TimeGrid, CliError> {
        let t_start = self.grid.t_start;
        let t_end = match self.grid.t_end {
            Some(t) => t,
            None => match &self.params {
                ScenarioParams::Rabi(p) => t_start + p.rabi_period()?,
                ScenarioParams::Pulse(p) => t_start + p.period(),
                ScenarioParams::Sampled(_) => match sampled_end {
                    Some(t) => t,
                    // Validation before the drive is loaded; any later end works.
                    None => t_start + 1.0,
                },
            },
        };
        let steps = match self.grid.steps {
            Some(s) => s,
            None => default_steps()?,
        };
        TimeGrid::new(t_start, t_end, steps).map_err(|e| CliError::config(format!("grid: {e}")))
    }
}

/// `$QDRIVE_STEPS_DEFAULT` if set, else [`BUILTIN_STEPS`].
pub fn default_steps() -> Result<usize, CliError> {
    match std::env::var(STEPS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(CliError::config(format!("{STEPS_ENV}: expected a positive integer, got {v:?}"))),
        },
        Err(std::env::VarError::NotPresent) => Ok(BUILTIN_STEPS),
        Err(e) => Err(CliError::config(format!("{STEPS_ENV}: {e}"))),
    }
}
