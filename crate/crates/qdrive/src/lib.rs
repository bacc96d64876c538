//! Configuration, file formats and scenario runners for `qdrive`.
//!
//! The numerical work lives in `qdrive-core`; this crate turns JSON scenario
//! configs into time series, writes them as CSV or JSON, and compares the
//! closed-form and numerically propagated trajectories.

pub mod config;
pub mod error;
pub mod io;
pub mod run;

pub use config::{GridSpec, Mode, OutputFormat, OutputSpec, Scenario, ScenarioConfig, ScenarioParams};
pub use error::CliError;
pub use run::{run_scenario, run_sweep, RunOutput, SweepParam, SweepRow, SweepSummary, VerifyReport};
