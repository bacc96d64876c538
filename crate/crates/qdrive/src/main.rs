use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qdrive::config::{pulse_params, rabi_params, sampled_params};
use qdrive::io::{format_f64, read_states_csv, records, write_series_csv, write_series_json, SeriesRecord};
use qdrive::{
    run_scenario, run_sweep, CliError, GridSpec, Mode, OutputFormat, OutputSpec, Scenario, ScenarioConfig,
    ScenarioParams, SweepParam, SweepRow,
};
use qdrive_core::{Complex, DensityMatrix, Sample, Tolerances};
use serde::Serialize;

/// Density-matrix dynamics of driven two-level systems.
#[derive(Parser)]
#[command(name = "qdrive", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rabi oscillation under the rotating-wave drive.
    Rabi {
        #[command(flatten)]
        rabi: RabiArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Periodic square-pulse drive.
    Pulse {
        #[command(flatten)]
        pulse: PulseArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Propagate under a sampled Hamiltonian read from CSV.
    Integrate {
        /// CSV with columns t,h00_re,h00_im,h01_re,h01_im,h10_re,h10_im,h11_re,h11_im.
        #[arg(long)]
        drive_file: Option<PathBuf>,
        /// Initial state as eight comma-separated numbers (rho00_re,rho00_im,...,rho11_im).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        rho0: Option<Vec<f64>>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Recompute purity and coherence measures for a CSV of states.
    Coherence {
        /// CSV with a `t` column and the eight `rho*` columns.
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run closed form and RK4 side by side and report the differences.
    Verify {
        #[arg(long, value_enum)]
        scenario: Option<Scenario>,
        #[command(flatten)]
        rabi: RabiArgs,
        #[command(flatten)]
        pulse: PulseArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Summarise a scenario over a list of parameter values.
    Sweep {
        #[arg(long, value_enum)]
        scenario: Option<Scenario>,
        #[arg(long, value_enum)]
        param: SweepParam,
        /// Comma-separated values; may be empty.
        #[arg(long, allow_hyphen_values = true)]
        values: String,
        #[command(flatten)]
        rabi: RabiArgs,
        #[command(flatten)]
        pulse: PulseArgs,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Args)]
struct RabiArgs {
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    e_g: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    e_e: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    omega0: f64,
    #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
    coupling_re: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    coupling_im: f64,
}

#[derive(Args)]
struct PulseArgs {
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    e0: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    f0: f64,
    #[arg(long, default_value_t = 1)]
    n_period: u32,
}

#[derive(Args)]
struct RunArgs {
    /// JSON scenario file; replaces every other scenario flag.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    t_start: f64,
    /// Defaults to one drive period.
    #[arg(long, allow_hyphen_values = true)]
    t_end: Option<f64>,
    /// Defaults to $QDRIVE_STEPS_DEFAULT, then 4096.
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct OutputArgs {
    /// Output file; stdout when absent.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
}

impl RabiArgs {
    fn params(&self) -> Result<ScenarioParams, CliError> {
        rabi_params(self.e_g, self.e_e, self.omega0, Complex::new(self.coupling_re, self.coupling_im))
    }
}

impl PulseArgs {
    fn params(&self) -> Result<ScenarioParams, CliError> {
        pulse_params(self.e0, self.f0, self.n_period)
    }
}

impl OutputArgs {
    fn spec(&self) -> OutputSpec {
        OutputSpec { path: self.output.clone(), format: self.format }
    }
}

impl RunArgs {
    /// The config file when given, else the flags. `expected` is checked
    /// against the file's scenario.
    fn build(
        &self,
        expected: Option<Scenario>,
        mode: Option<Mode>,
        params: impl FnOnce() -> Result<ScenarioParams, CliError>,
    ) -> Result<ScenarioConfig, CliError> {
        if let Some(path) = &self.config {
            let cfg = ScenarioConfig::from_file(path)?;
            if let Some(s) = expected {
                if cfg.scenario() != s {
                    return Err(CliError::config(format!(
                        "scenario: config file describes {:?}, expected {:?}",
                        cfg.scenario(),
                        s
                    )
                    .to_lowercase()));
                }
            }
            return match mode {
                Some(m) if m != cfg.mode => ScenarioConfig::new(cfg.params, cfg.grid, Some(m), cfg.output),
                _ => Ok(cfg),
            };
        }
        let grid = GridSpec { t_start: self.t_start, t_end: self.t_end, steps: self.steps };
        ScenarioConfig::new(params()?, grid, mode.or(self.mode), self.output.spec())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn execute(command: Command) -> Result<u8, CliError> {
    match command {
        Command::Rabi { rabi, run } => {
            let cfg = run.build(Some(Scenario::Rabi), None, || rabi.params())?;
            run_and_write(&cfg)
        }
        Command::Pulse { pulse, run } => {
            let cfg = run.build(Some(Scenario::Pulse), None, || pulse.params())?;
            run_and_write(&cfg)
        }
        Command::Integrate { drive_file, rho0, run } => {
            let cfg = run.build(Some(Scenario::Sampled), None, || {
                let file = drive_file.ok_or_else(|| CliError::config("params.drive_file: --drive-file is required"))?;
                sampled_params(file, rho0)
            })?;
            run_and_write(&cfg)
        }
        Command::Coherence { input, output } => {
            let file = File::open(&input).map_err(|e| CliError::io(&input, e))?;
            let mut rows = Vec::new();
            for (i, (t, m)) in read_states_csv(file)?.into_iter().enumerate() {
                let rho = DensityMatrix::with_tolerances(m, Tolerances::RUNTIME)
                    .map_err(|e| CliError::config(format!("{}: row {}: {e}", input.display(), i + 1)))?;
                rows.push(SeriesRecord::from_sample(&Sample::new(t, rho)));
            }
            write_records(&output.spec(), &rows)?;
            Ok(0)
        }
        Command::Verify { scenario, rabi, pulse, run } => {
            let scenario = scenario_from(scenario, &run)?;
            let cfg = run.build(scenario, Some(Mode::Verify), || match scenario {
                Some(Scenario::Pulse) => pulse.params(),
                Some(Scenario::Rabi) => rabi.params(),
                _ => Err(CliError::config("scenario: verify needs --scenario rabi or pulse")),
            })?;
            let out = run_scenario(&cfg)?;
            let report = out.report.expect("verify mode always reports");
            if cfg.output.path.is_some() {
                write_records(&cfg.output, &records(&out.series))?;
            }
            println!("{}", serde_json::to_string_pretty(&report)?);
            Ok(if report.passed { 0 } else { 1 })
        }
        Command::Sweep { scenario, param, values, rabi, pulse, run } => {
            let scenario = scenario_from(scenario, &run)?;
            let values = parse_values(&values)?;
            let cfg = run.build(scenario, None, || match scenario {
                Some(Scenario::Pulse) => pulse.params(),
                Some(Scenario::Rabi) => rabi.params(),
                _ => Err(CliError::config("scenario: sweep needs --scenario rabi or pulse")),
            })?;
            let rows = run_sweep(&cfg, param, &values)?;
            write_sweep(&cfg.output, &rows)?;
            Ok(0)
        }
    }
}

fn scenario_from(flag: Option<Scenario>, run: &RunArgs) -> Result<Option<Scenario>, CliError> {
    match (flag, &run.config) {
        (None, None) => Err(CliError::config("scenario: pass --scenario or --config")),
        (s, _) => Ok(s),
    }
}

fn parse_values(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|v| !v.is_empty())
        .map(|v| v.parse::<f64>().map_err(|_| CliError::config(format!("values: not a number: {v:?}"))))
        .collect()
}

fn run_and_write(cfg: &ScenarioConfig) -> Result<u8, CliError> {
    let out = run_scenario(cfg)?;
    write_records(&cfg.output, &records(&out.series))?;
    Ok(0)
}

fn with_sink(path: Option<&Path>, f: impl FnOnce(&mut dyn Write) -> Result<(), CliError>) -> Result<(), CliError> {
    match path {
        Some(p) => {
            let file = File::create(p).map_err(|e| CliError::io(p, e))?;
            let mut w = BufWriter::new(file);
            f(&mut w)?;
            w.flush().map_err(|e| CliError::io(p, e))
        }
        None => {
            let stdout = std::io::stdout();
            let mut w = stdout.lock();
            f(&mut w)?;
            w.flush().map_err(|e| CliError::io("<stdout>", e))
        }
    }
}

fn write_records(out: &OutputSpec, rows: &[SeriesRecord]) -> Result<(), CliError> {
    with_sink(out.path.as_deref(), |w| match out.format {
        OutputFormat::Csv => write_series_csv(w, rows),
        OutputFormat::Json => write_series_json(w, rows),
    })
}

#[derive(Serialize)]
struct SweepRecord {
    value: f64,
    max_c_l1: Option<f64>,
    min_purity: Option<f64>,
    max_purity: Option<f64>,
    period_return_error: Option<f64>,
    error: Option<String>,
}

fn write_sweep(out: &OutputSpec, rows: &[SweepRow]) -> Result<(), CliError> {
    let recs: Vec<SweepRecord> = rows
        .iter()
        .map(|r| match &r.result {
            Ok(s) => SweepRecord {
                value: r.value,
                max_c_l1: Some(s.max_c_l1),
                min_purity: Some(s.min_purity),
                max_purity: Some(s.max_purity),
                period_return_error: Some(s.period_return_error),
                error: None,
            },
            Err(e) => SweepRecord {
                value: r.value,
                max_c_l1: None,
                min_purity: None,
                max_purity: None,
                period_return_error: None,
                error: Some(e.to_string()),
            },
        })
        .collect();
    with_sink(out.path.as_deref(), |w| match out.format {
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut *w, &recs)?;
            w.write_all(b"\n").map_err(|e| CliError::io("<json output>", e))
        }
        OutputFormat::Csv => {
            let mut csv = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w);
            csv.write_record(["value", "max_c_l1", "min_purity", "max_purity", "period_return_error", "error"])?;
            let num = |x: Option<f64>| x.map(format_f64).unwrap_or_default();
            for r in &recs {
                csv.write_record([
                    format_f64(r.value),
                    num(r.max_c_l1),
                    num(r.min_purity),
                    num(r.max_purity),
                    num(r.period_return_error),
                    r.error.clone().unwrap_or_default(),
                ])?;
            }
            csv.flush().map_err(|e| CliError::io("<csv output>", e))
        }
    })
}
