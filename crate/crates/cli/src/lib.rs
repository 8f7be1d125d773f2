//! Command-line front end: scenario configuration, runners for each
//! subcommand, and the text output formats.

pub mod config;
pub mod error;
pub mod output;
pub mod runner;

pub use config::{preset, resolve, FlagOverrides, Scenario, ScenarioConfig, SourceArg, PRESETS};
pub use error::CliError;
pub use runner::{run_corrections, run_predict, run_simulate, Prediction, SimulationSummary};
