use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use heplus_cli::{
    config::ParamOverrides, resolve, run_corrections, run_predict, run_simulate, CliError, FlagOverrides,
    ScenarioConfig, SourceArg,
};
use heplus_core::{default_params, ParamWarning};

/// Purity dynamics of a bound electron coupled to a nucleus in a spherical well.
#[derive(Parser)]
#[command(name = "heplus", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate the purity trace and summarize it.
    Simulate {
        #[command(flatten)]
        scenario: ScenarioArgs,
        /// Trace CSV destination (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Summary JSON destination (stderr if omitted).
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Print the equilibrium purity and the analytic time average as JSON.
    Predict {
        #[command(flatten)]
        scenario: ScenarioArgs,
    },
    /// Tabulate the coupling corrections for all level pairs.
    Corrections {
        #[arg(long, default_value_t = 3)]
        n_max: u32,
        #[arg(long, default_value_t = 3)]
        nn_max: u32,
        /// Also evaluate the quadrature oracle and report the discrepancy.
        #[arg(long)]
        oracle: bool,
        /// JSON config whose `params` block overrides the defaults.
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ScenarioArgs {
    /// Built-in preset: fig2, fig2-high, fig3.
    #[arg(long)]
    scenario: Option<String>,
    /// JSON scenario config.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long = "t-max")]
    t_max: Option<f64>,
    #[arg(long)]
    points: Option<usize>,
    #[arg(long, value_enum)]
    source: Option<SourceArg>,
}

impl ScenarioArgs {
    fn load(&self, out: Option<PathBuf>, summary: Option<PathBuf>) -> Result<heplus_cli::Scenario, CliError> {
        let cfg = match &self.config {
            Some(path) => ScenarioConfig::load(path)?,
            None => ScenarioConfig::default(),
        };
        let flags = FlagOverrides {
            scenario: self.scenario.clone(),
            t_max_seconds: self.t_max,
            num_points: self.points,
            source: self.source,
            trace_path: out,
            summary_path: summary,
        };
        resolve(&cfg, &flags)
    }
}

fn warn(warnings: &[ParamWarning]) {
    for w in warnings {
        eprintln!("warning: {w}");
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

fn write_stream(mut sink: impl Write, text: &str) -> Result<(), CliError> {
    sink.write_all(text.as_bytes())
        .and_then(|_| sink.flush())
        .map_err(|e| CliError::Io(e.to_string()))
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Simulate { scenario, out, summary } => {
            let s = scenario.load(out, summary)?;
            let result = run_simulate(&s)?;
            warn(&result.warnings);
            match &s.trace_path {
                Some(p) => write_file(p, &result.trace_csv)?,
                None => write_stream(std::io::stdout().lock(), &result.trace_csv)?,
            }
            match &s.summary_path {
                Some(p) => write_file(p, &result.summary_json)?,
                None => write_stream(std::io::stderr().lock(), &result.summary_json)?,
            }
        }
        Command::Predict { scenario } => {
            let s = scenario.load(None, None)?;
            let result = run_predict(&s)?;
            warn(&result.warnings);
            write_stream(std::io::stdout().lock(), &result.json)?;
        }
        Command::Corrections {
            n_max,
            nn_max,
            oracle,
            config,
        } => {
            let overrides: ParamOverrides = match config {
                Some(path) => ScenarioConfig::load(&path)?.params.unwrap_or_default(),
                None => ParamOverrides::default(),
            };
            let params = overrides.apply(default_params());
            warn(&params.validate()?);
            let result = run_corrections(n_max, nn_max, oracle, &params)?;
            write_stream(std::io::stdout().lock(), &result.csv)?;
            for line in &result.report {
                eprintln!("{line}");
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
