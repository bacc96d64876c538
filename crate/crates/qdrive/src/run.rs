//! Scenario runs, verification reports and parameter sweeps.

use std::str::FromStr;

use qdrive_core::{
    l1_coherence, propagate, pulse_density, rabi_density, Complex, DensityMatrix, DriveHamiltonian, Mat2, Sample,
    TimeGrid, TimeSeries,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{Mode, ScenarioConfig, ScenarioParams};
use crate::error::CliError;
use crate::io::read_drive_csv;

/// Largest accepted entrywise difference between numeric and closed form.
pub const ENTRY_THRESHOLD: f64 = 1e-6;
/// Largest accepted `|tr ρ − 1|` of the numeric trajectory.
pub const TRACE_THRESHOLD: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub samples: usize,
    pub max_entry_error: f64,
    pub max_trace_drift: f64,
    pub max_purity_drift: f64,
    pub entry_threshold: f64,
    pub trace_threshold: f64,
    pub passed: bool,
}

impl VerifyReport {
    /// The verdict depends only on the two gated maxima; purity drift is
    /// reported but not gated.
    pub fn evaluate(samples: usize, max_entry_error: f64, max_trace_drift: f64, max_purity_drift: f64) -> Self {
        let passed = max_entry_error <= ENTRY_THRESHOLD && max_trace_drift <= TRACE_THRESHOLD;
        VerifyReport {
            samples,
            max_entry_error,
            max_trace_drift,
            max_purity_drift,
            entry_threshold: ENTRY_THRESHOLD,
            trace_threshold: TRACE_THRESHOLD,
            passed,
        }
    }

    pub fn compare(numeric: &TimeSeries, analytic: &TimeSeries) -> Self {
        let (mut entry, mut trace, mut purity) = (0.0f64, 0.0f64, 0.0f64);
        for (n, a) in numeric.iter().zip(analytic) {
            entry = entry.max(n.rho.max_abs_diff(&a.rho));
            trace = trace.max((n.rho.matrix().trace() - Complex::ONE).abs());
            purity = purity.max((n.purity - a.purity).abs());
        }
        Self::evaluate(numeric.len(), entry, trace, purity)
    }
}

#[derive(Debug)]
pub struct RunOutput {
    pub series: TimeSeries,
    /// Present in verify mode.
    pub report: Option<VerifyReport>,
}

/// Runs one scenario. Verify mode returns the numeric series with the report.
pub fn run_scenario(cfg: &ScenarioConfig) -> Result<RunOutput, CliError> {
    if let ScenarioParams::Sampled(spec) = &cfg.params {
        let drive = read_drive_csv(&spec.drive_file)?;
        let grid = cfg.resolve_grid(Some(drive.last_time()))?;
        let rho0 = match spec.rho0 {
            None => DensityMatrix::ground(),
            Some(v) => DensityMatrix::new(Mat2::new(
                Complex::new(v[0], v[1]),
                Complex::new(v[2], v[3]),
                Complex::new(v[4], v[5]),
                Complex::new(v[6], v[7]),
            ))
            .map_err(|e| CliError::config(format!("params.rho0: {e}")))?,
        };
        let series = propagate(&DriveHamiltonian::Sampled(drive), &rho0, &grid)?;
        return Ok(RunOutput { series, report: None });
    }

    let grid = cfg.resolve_grid(None)?;
    match cfg.mode {
        Mode::Analytic => Ok(RunOutput { series: analytic_series(&cfg.params, &grid)?, report: None }),
        Mode::Numeric => Ok(RunOutput { series: numeric_series(&cfg.params, &grid)?, report: None }),
        Mode::Verify => {
            let analytic = analytic_series(&cfg.params, &grid)?;
            let numeric = numeric_series(&cfg.params, &grid)?;
            let report = VerifyReport::compare(&numeric, &analytic);
            Ok(RunOutput { series: numeric, report: Some(report) })
        }
    }
}

fn closed_form(params: &ScenarioParams, t: f64) -> Result<DensityMatrix, CliError> {
    match params {
        ScenarioParams::Rabi(p) => Ok(rabi_density(p, t)?),
        ScenarioParams::Pulse(p) => Ok(pulse_density(p, t)),
        ScenarioParams::Sampled(_) => Err(CliError::config("mode: a sampled drive has no closed form")),
    }
}

fn analytic_series(params: &ScenarioParams, grid: &TimeGrid) -> Result<TimeSeries, CliError> {
    let mut series = TimeSeries::with_capacity(grid.steps() + 1);
    for t in grid.nodes() {
        series.push(Sample::new(t, closed_form(params, t)?))?;
    }
    Ok(series)
}

/// Propagates from the closed-form state at `grid.t_start()`.
fn numeric_series(params: &ScenarioParams, grid: &TimeGrid) -> Result<TimeSeries, CliError> {
    let drive = match params {
        ScenarioParams::Rabi(p) => DriveHamiltonian::RwaRabi(*p),
        ScenarioParams::Pulse(p) => DriveHamiltonian::SquarePulse(*p),
        ScenarioParams::Sampled(_) => return Err(CliError::config("scenario: sampled drives are run from a file")),
    };
    let rho0 = closed_form(params, grid.t_start())?;
    Ok(propagate(&drive, &rho0, grid)?)
}

/// Parameter varied by [`run_sweep`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum SweepParam {
    /// Pulse amplitude ratio `f0`.
    F0,
    /// `|g|` of the Rabi coupling, keeping its phase.
    CouplingMagnitude,
    /// Rabi drive frequency `ω₀`.
    Omega0,
}

impl SweepParam {
    pub fn name(self) -> &'static str {
        match self {
            SweepParam::F0 => "f0",
            SweepParam::CouplingMagnitude => "coupling-magnitude",
            SweepParam::Omega0 => "omega0",
        }
    }
}

impl FromStr for SweepParam {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "f0" => Ok(SweepParam::F0),
            "coupling-magnitude" | "coupling_magnitude" => Ok(SweepParam::CouplingMagnitude),
            "omega0" => Ok(SweepParam::Omega0),
            other => Err(CliError::config(format!(
                "param: unknown sweep parameter {other:?} (expected f0, coupling-magnitude or omega0)"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SweepSummary {
    pub max_c_l1: f64,
    pub min_purity: f64,
    pub max_purity: f64,
    /// Entrywise distance between the state one drive period after `t = 0`
    /// and the initial ground state.
    pub period_return_error: f64,
}

#[derive(Debug)]
pub struct SweepRow {
    pub value: f64,
    pub result: Result<SweepSummary, CliError>,
}

/// Runs `base` once per value of `param`. Rows run in parallel and come back
/// in input order; a failing row records its error and the rest continue.
pub fn run_sweep(base: &ScenarioConfig, param: SweepParam, values: &[f64]) -> Result<Vec<SweepRow>, CliError> {
    match (&base.params, param) {
        (ScenarioParams::Pulse(_), SweepParam::F0)
        | (ScenarioParams::Rabi(_), SweepParam::CouplingMagnitude | SweepParam::Omega0) => {}
        _ => {
            return Err(CliError::config(format!(
                "param: {} cannot be swept on a {:?} scenario",
                param.name(),
                base.scenario()
            )
            .to_lowercase()));
        }
    }
    Ok(values
        .par_iter()
        .map(|&value| SweepRow { value, result: sweep_row(base, param, value) })
        .collect())
}

fn with_value(params: &ScenarioParams, param: SweepParam, value: f64) -> Result<ScenarioParams, CliError> {
    use crate::config::{pulse_params, rabi_params};
    match (params, param) {
        (ScenarioParams::Pulse(p), SweepParam::F0) => pulse_params(p.e0(), value, p.n_period()),
        (ScenarioParams::Rabi(p), SweepParam::Omega0) => rabi_params(p.e_g, p.e_e, value, p.coupling),
        (ScenarioParams::Rabi(p), SweepParam::CouplingMagnitude) => {
            if !(value >= 0.0 && value.is_finite()) {
                return Err(CliError::config(format!("params.coupling: magnitude must be non-negative, got {value}")));
            }
            let g = p.coupling;
            let phase = if g.abs() > 0.0 { g.scale(1.0 / g.abs()) } else { Complex::ONE };
            rabi_params(p.e_g, p.e_e, p.omega0, phase.scale(value))
        }
        _ => unreachable!("checked by run_sweep"),
    }
}

fn sweep_row(base: &ScenarioConfig, param: SweepParam, value: f64) -> Result<SweepSummary, CliError> {
    let params = with_value(&base.params, param, value)?;
    let cfg = ScenarioConfig::new(params, base.grid.clone(), Some(base.mode), base.output.clone())?;
    let out = run_scenario(&cfg)?;
    if let Some(report) = &out.report {
        if !report.passed {
            return Err(CliError::VerificationFailed(format!(
                "max entry error {:e}, max trace drift {:e}",
                report.max_entry_error, report.max_trace_drift
            )));
        }
    }

    let series = out.series.samples();
    let (mut min_purity, mut max_purity) = (f64::INFINITY, f64::NEG_INFINITY);
    let mut best = 0;
    for (i, s) in series.iter().enumerate() {
        min_purity = min_purity.min(s.purity);
        max_purity = max_purity.max(s.purity);
        if s.c_l1 > series[best].c_l1 {
            best = i;
        }
    }
    let mut max_c_l1 = series[best].c_l1;
    if cfg.mode != Mode::Numeric {
        let a = series[best.saturating_sub(1)].t;
        let b = series[(best + 1).min(series.len() - 1)].t;
        let refined = golden_max(|t| closed_form(&cfg.params, t).map(|r| l1_coherence(&r)).unwrap_or(0.0), a, b);
        max_c_l1 = max_c_l1.max(refined);
    }

    Ok(SweepSummary { max_c_l1, min_purity, max_purity, period_return_error: period_return_error(&cfg)? })
}

fn period_return_error(cfg: &ScenarioConfig) -> Result<f64, CliError> {
    let ground = DensityMatrix::ground();
    match (&cfg.params, cfg.mode) {
        (ScenarioParams::Rabi(p), Mode::Analytic) => {
            Ok(rabi_density(p, p.rabi_period()?)?.max_abs_diff(&ground))
        }
        (ScenarioParams::Pulse(p), Mode::Analytic) => Ok(pulse_density(p, p.period()).max_abs_diff(&ground)),
        (params, _) => {
            let (drive, period) = match params {
                ScenarioParams::Rabi(p) => (DriveHamiltonian::RwaRabi(*p), p.rabi_period()?),
                ScenarioParams::Pulse(p) => (DriveHamiltonian::SquarePulse(*p), p.period()),
                ScenarioParams::Sampled(_) => unreachable!("sampled drives are not swept"),
            };
            let steps = cfg.resolve_grid(None)?.steps().next_multiple_of(2);
            let grid = TimeGrid::new(0.0, period, steps).map_err(|e| CliError::config(format!("grid: {e}")))?;
            let series = propagate(&drive, &ground, &grid)?;
            Ok(series.last().map_or(0.0, |s| s.rho.max_abs_diff(&ground)))
        }
    }
}

/// Golden-section search for a maximum of a unimodal `f` on `[a, b]`.
fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if b - a <= 1e-15 * (1.0 + a.abs().max(b.abs())) {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    fc.max(fd)
}
