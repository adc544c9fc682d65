//! Command-line front end: layered configuration, batch runs, CSV output and
//! a paired-seed comparison table.

pub mod config;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use fihr::metrics::{self, MeanOf, MetricsError};
use fihr::{run_simulation, ConfigError, ProtocolKind, Scenario, SimulationResult};

pub use config::{parse_config, ConfigFile, FlagOverrides, LoadError, Resolved};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_IO: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScenarioArg {
    Scenario1,
    Scenario2,
}

impl From<ScenarioArg> for Scenario {
    fn from(s: ScenarioArg) -> Self {
        match s {
            ScenarioArg::Scenario1 => Scenario::Scenario1,
            ScenarioArg::Scenario2 => Scenario::Scenario2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProtocolArg {
    Fihr,
    Ihr,
    Dhr,
    All,
}

impl ProtocolArg {
    fn kinds(self) -> Vec<ProtocolKind> {
        match self {
            Self::Fihr => vec![ProtocolKind::Fihr],
            Self::Ihr => vec![ProtocolKind::Ihr],
            Self::Dhr => vec![ProtocolKind::Dhr],
            Self::All => ProtocolKind::ALL.to_vec(),
        }
    }
}

/// Simulate FIHR, IHR and DHR clustering on a sensor field and write per-round CSV series.
#[derive(Debug, Parser)]
#[command(name = "fihr", version)]
pub struct Args {
    /// Preset field layout.
    #[arg(long, value_enum)]
    pub scenario: Option<ScenarioArg>,
    /// Protocol to simulate [default: all].
    #[arg(long, value_enum)]
    pub protocol: Option<ProtocolArg>,
    /// Independent runs per protocol; run k uses seed + k.
    #[arg(long)]
    pub runs: Option<u32>,
    #[arg(long)]
    pub rounds: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Per-head, per-round hardware fault probability.
    #[arg(long)]
    pub fault_rate: Option<f64>,
    /// TOML file layered between the preset and these flags.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output directory for CSV files.
    #[arg(long, default_value = "fihr-out")]
    pub out: PathBuf,
    /// Print mean FND, HNA and throughput per protocol.
    #[arg(long)]
    pub compare: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Load(#[from] LoadError),
    #[error(transparent)]
    Invalid(#[from] ConfigError),
    #[error("{0}")]
    Conflict(String),
    #[error("cannot write output: {0}")]
    Output(#[from] MetricsError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Load(LoadError::NotFound(_) | LoadError::Io { .. }) | Self::Output(_) => EXIT_IO,
            _ => EXIT_INVALID,
        }
    }
}

impl Args {
    pub fn overrides(&self) -> FlagOverrides {
        FlagOverrides {
            scenario: self.scenario.map(Into::into),
            protocols: self.protocol.map(ProtocolArg::kinds),
            runs: self.runs,
            rounds: self.rounds,
            seed: self.seed,
            fault_rate: self.fault_rate,
        }
    }

    pub fn resolve(&self) -> Result<Resolved, CliError> {
        let file = match &self.config {
            Some(path) => ConfigFile::load(path)?,
            None => ConfigFile::default(),
        };
        let resolved = config::resolve(&file, &self.overrides())?;
        if self.compare && resolved.protocols.len() < 2 {
            return Err(CliError::Conflict("--compare needs more than one protocol; use --protocol all".into()));
        }
        Ok(resolved)
    }
}

fn fmt_mean(m: &MeanOf) -> String {
    match m.mean {
        None => "n/a".to_owned(),
        Some(v) if m.is_partial() => format!("{v:.1}*"),
        Some(v) => format!("{v:.1}"),
    }
}

pub fn comparison_table(results: &[SimulationResult]) -> String {
    let mut out = format!("{:<8} {:>10} {:>10} {:>14}\n", "protocol", "FND", "HNA", "throughput_kb");
    let mut partial = false;
    for r in results {
        let s = &r.mean.summary;
        partial |= s.fnd.is_partial() || s.hna.is_partial();
        out.push_str(&format!(
            "{:<8} {:>10} {:>10} {:>14.1}\n",
            r.protocol.as_str(),
            fmt_mean(&s.fnd),
            fmt_mean(&s.hna),
            s.throughput_kb
        ));
    }
    if partial {
        out.push_str("* averaged over the runs that reached the event\n");
    }
    out
}

/// Runs the batch described by `args`, writing CSVs and reporting to `stdout`.
pub fn execute(args: &Args, stdout: &mut dyn Write) -> Result<Vec<SimulationResult>, CliError> {
    let resolved = args.resolve()?;
    let mut results = Vec::with_capacity(resolved.protocols.len());
    for &protocol in &resolved.protocols {
        let mut cfg = resolved.base.clone();
        cfg.protocol = protocol;
        results.push(run_simulation(&cfg)?);
    }
    let refs: Vec<&SimulationResult> = results.iter().collect();
    let written = metrics::emit_csv(&refs, &resolved.scenario_name, &args.out)?;
    let _ = writeln!(stdout, "wrote {} files to {}", written.len(), args.out.display());
    if args.compare {
        let _ = write!(stdout, "{}", comparison_table(&results));
    }
    Ok(results)
}

/// Parses `args` (program name first) and runs; returns the process exit code.
pub fn run_cli_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(stderr, "{text}") } else { write!(stdout, "{text}") };
            return code;
        }
    };
    match execute(&args, stdout) {
        Ok(_) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_cli_with(args, &mut std::io::stdout(), &mut std::io::stderr())
}
