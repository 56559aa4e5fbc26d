//! Command-line front end: configuration, subcommands, atomic output and
//! the benchmark harness.
//!
//! Exit status is 0 on success, 2 when the configuration is invalid and 1
//! when a run fails after validation.

pub mod bench;
pub mod commands;
pub mod config;
pub mod output;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

pub use config::{Command, FitSpec, RunConfig, VerifyCheck};

/// Environment variable giving the default worker-thread cap.
pub const THREADS_ENV: &str = "STGRF_THREADS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Run(#[from] stgrf::Error),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Run(_) | CliError::Io(_) => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "stgrf",
    version,
    about = "Gaussian random fields on the sphere cross time"
)]
pub struct Cli {
    /// Configuration file; flags override its values.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Worker-thread cap (default from STGRF_THREADS, else all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Sub,
}

#[derive(Debug, Subcommand)]
pub enum Sub {
    /// Simulate a realization and write CSV plus a provenance sidecar.
    Simulate(Flags),
    /// Truncation error bound for one (J, K).
    Bound(Flags),
    /// Grid of bounds over J x K for several scenarios.
    Table(Flags),
    /// Monte Carlo and oracle checks.
    Verify(Flags),
    /// Timing of simulation against the number of points.
    Bench(Flags),
    /// Kernel values on a (theta, lag) grid.
    KernelGrid(Flags),
}

/// Flags shared by every subcommand; each maps onto a configuration key.
#[derive(Debug, Args, Default)]
pub struct Flags {
    #[arg(long)]
    pub spectrum: Option<String>,
    #[arg(long)]
    pub convention: Option<String>,
    #[arg(long)]
    pub nlat: Option<String>,
    #[arg(long)]
    pub nlon: Option<String>,
    #[arg(long)]
    pub colatitude_rule: Option<String>,
    /// File of `colatitude,longitude` lines.
    #[arg(long)]
    pub points: Option<String>,
    #[arg(long)]
    pub times: Option<String>,
    #[arg(long)]
    pub horizon: Option<String>,
    #[arg(long = "J")]
    pub j: Option<String>,
    #[arg(long = "K")]
    pub k: Option<String>,
    #[arg(long)]
    pub seed: Option<String>,
    #[arg(long)]
    pub basis: Option<String>,
    #[arg(long)]
    pub epsilon: Option<String>,
    #[arg(long)]
    pub tail: Option<String>,
    #[arg(long)]
    pub scenarios: Option<String>,
    /// `J,K:target,...`, one target per scenario.
    #[arg(long)]
    pub fit: Option<String>,
    #[arg(long)]
    pub sizes: Option<String>,
    #[arg(long)]
    pub repetitions: Option<String>,
    #[arg(long)]
    pub check: Option<String>,
    #[arg(long)]
    pub n_reps: Option<String>,
    #[arg(long)]
    pub n_theta: Option<String>,
    #[arg(long)]
    pub n_u: Option<String>,
    #[arg(long)]
    pub max_lag: Option<String>,
    #[arg(long, short)]
    pub output: Option<String>,
    #[arg(long)]
    pub binary: Option<String>,
    #[arg(long)]
    pub provenance: Option<String>,
}

impl Flags {
    fn pairs(&self) -> Vec<(&'static str, &String)> {
        let all = [
            ("spectrum", &self.spectrum),
            ("convention", &self.convention),
            ("n_lat", &self.nlat),
            ("n_lon", &self.nlon),
            ("colatitude_rule", &self.colatitude_rule),
            ("points_file", &self.points),
            ("times", &self.times),
            ("horizon", &self.horizon),
            ("J", &self.j),
            ("K", &self.k),
            ("seed", &self.seed),
            ("basis", &self.basis),
            ("epsilon", &self.epsilon),
            ("tail", &self.tail),
            ("scenarios", &self.scenarios),
            ("fit", &self.fit),
            ("sizes", &self.sizes),
            ("repetitions", &self.repetitions),
            ("check", &self.check),
            ("n_reps", &self.n_reps),
            ("n_theta", &self.n_theta),
            ("n_u", &self.n_u),
            ("max_lag", &self.max_lag),
            ("output", &self.output),
            ("binary", &self.binary),
            ("provenance", &self.provenance),
        ];
        all.into_iter()
            .filter_map(|(k, v)| v.as_ref().map(|v| (k, v)))
            .collect()
    }
}

/// Builds the configuration: defaults, then the file, then flags, then the
/// thread cap from the environment when none was given.
pub fn resolve_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("`config`: {}: {e}", path.display())))?;
        cfg.apply_text(&text)?;
    }
    let (command, flags) = match &cli.command {
        Sub::Simulate(f) => (Command::Simulate, f),
        Sub::Bound(f) => (Command::Bound, f),
        Sub::Table(f) => (Command::Table, f),
        Sub::Verify(f) => (Command::Verify, f),
        Sub::Bench(f) => (Command::Bench, f),
        Sub::KernelGrid(f) => (Command::KernelGrid, f),
    };
    cfg.command = command;
    for (k, v) in flags.pairs() {
        cfg.set(k, v)?;
    }
    if let Some(t) = cli.threads {
        cfg.threads = Some(t);
    } else if cfg.threads.is_none() {
        if let Ok(v) = std::env::var(THREADS_ENV) {
            cfg.set("threads", &v)
                .map_err(|e| CliError::Config(format!("{THREADS_ENV}: {e}")))?;
        }
    }
    if cfg.threads == Some(0) {
        return Err(CliError::Config("`threads` must be at least 1".into()));
    }
    Ok(cfg)
}

/// Runs a resolved configuration, capping rayon's pool at the configured
/// thread count.
pub fn run(cfg: &RunConfig) -> Result<String, CliError> {
    match cfg.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Config(format!("`threads`: {e}")))?
            .install(|| commands::execute(cfg)),
        None => commands::execute(cfg),
    }
}

/// Parses `args`, runs, prints the summary or the error, and returns the
/// exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match resolve_config(&cli).and_then(|cfg| run(&cfg)) {
        Ok(summary) => {
            eprintln!("{summary}");
            0
        }
        Err(e) => {
            eprintln!("stgrf: {e}");
            e.exit_code()
        }
    }
}
