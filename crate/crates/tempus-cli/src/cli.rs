//! Command-line surface: flag definitions, config-file overlay, dispatch,
//! and artifact writing.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::commands;
use crate::config::ConfigBag;
use crate::error::CliError;

/// Numerical experiments on dephasing, finite clocks, and clock bounds.
#[derive(Debug, Parser)]
#[command(name = "tempus", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Entropy growth of the time-averaged state after a quench.
    Quench(QuenchArgs),
    /// Fidelity of an imperfectly timed reversal as a function of the
    /// timing error.
    Echo(EchoArgs),
    /// Finite clock: pointer readout across a period and the record
    /// entropy of reading it.
    Clock(ClockArgs),
    /// Reversal steered by a finite clock: recovered fidelity vs record
    /// cost, swept over the clock resolution.
    Demon(DemonArgs),
    /// Relativistic and thermodynamic tick budgets across a mass sweep.
    Bounds(BoundsArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Quench(_) => "quench",
            Command::Echo(_) => "echo",
            Command::Clock(_) => "clock",
            Command::Demon(_) => "demon",
            Command::Bounds(_) => "bounds",
        }
    }
}

/// Which Hamiltonian to build and which state to quench it with.
#[derive(Debug, Clone, Args)]
pub struct SystemArgs {
    /// Hamiltonian family: gue, goe, or spin-chain [default: gue]
    #[arg(long)]
    pub ensemble: Option<String>,

    /// Hilbert-space dimension, 2..=4096 (gue and goe) [default: 64]
    #[arg(long)]
    pub dim: Option<usize>,

    /// Number of spins, 2..=12 (spin-chain) [default: 8]
    #[arg(long)]
    pub length: Option<usize>,

    /// Ising coupling (spin-chain) [default: 1.0]
    #[arg(long)]
    pub coupling: Option<f64>,

    /// Transverse field (spin-chain) [default: 0.9]
    #[arg(long)]
    pub transverse_field: Option<f64>,

    /// Longitudinal field (spin-chain) [default: 0.5]
    #[arg(long)]
    pub longitudinal_field: Option<f64>,

    /// Random seed; drives the ensemble (stream 0) and any sampling
    /// (streams 1..) [default: 1]
    #[arg(long)]
    pub seed: Option<u64>,

    /// Initial state: basis, uniform, or eigenstate [default: basis]
    #[arg(long)]
    pub initial: Option<String>,

    /// Index of the basis vector or eigenstate [default: 0]
    #[arg(long)]
    pub initial_index: Option<usize>,
}

impl SystemArgs {
    pub(crate) fn apply_config(&mut self, bag: &mut ConfigBag, problems: &mut Vec<String>) {
        bag.fill(&mut self.ensemble, "ensemble", problems);
        bag.fill(&mut self.dim, "dim", problems);
        bag.fill(&mut self.length, "length", problems);
        bag.fill(&mut self.coupling, "coupling", problems);
        bag.fill(&mut self.transverse_field, "transverse-field", problems);
        bag.fill(&mut self.longitudinal_field, "longitudinal-field", problems);
        bag.fill(&mut self.seed, "seed", problems);
        bag.fill(&mut self.initial, "initial", problems);
        bag.fill(&mut self.initial_index, "initial-index", problems);
    }
}

/// Where and how the result table leaves the process.
#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Write the table to this path instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Output format: csv or json [default: csv]
    #[arg(long)]
    pub format: Option<String>,

    /// key=value file supplying defaults; explicit flags win
    #[arg(long)]
    pub config: Option<PathBuf>,

    /// Print wall-clock timing to stderr (never into the artifact)
    #[arg(long)]
    pub timing: bool,
}

impl OutputArgs {
    pub(crate) fn apply_config(&mut self, bag: &mut ConfigBag, problems: &mut Vec<String>) {
        let mut out: Option<String> = self.out.as_ref().map(|p| p.display().to_string());
        let had_out = out.is_some();
        bag.fill(&mut out, "out", problems);
        if !had_out {
            self.out = out.map(PathBuf::from);
        }
        bag.fill(&mut self.format, "format", problems);
        bag.fill_flag(&mut self.timing, "timing", problems);
    }
}

#[derive(Debug, Clone, Args)]
pub struct QuenchArgs {
    #[command(flatten)]
    pub system: SystemArgs,

    /// Time grid min:max:count:scale; log spacing suits the logarithmic
    /// growth [default: 0.1:10000:64:log]
    #[arg(long)]
    pub times: Option<String>,

    /// Units of time-like grids: taub (multiples of the dephasing time
    /// 1/energy-width) or abs [default: taub]
    #[arg(long)]
    pub unit: Option<String>,

    /// Optional lo:hi window (dephasing-time units) for a logarithmic
    /// growth fit reported in the metadata
    #[arg(long)]
    pub fit_window: Option<String>,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct EchoArgs {
    #[command(flatten)]
    pub system: SystemArgs,

    /// Timing-error grid min:max:count:scale [default: -4:4:161:lin]
    #[arg(long, allow_hyphen_values = true)]
    pub deltas: Option<String>,

    /// Units of the delta grid: taub or abs [default: taub]
    #[arg(long)]
    pub unit: Option<String>,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ClockArgs {
    /// Number of pointer positions, 2..=4096 [default: 8]
    #[arg(long)]
    pub ticks: Option<usize>,

    /// Clock resolution: the time between ticks [default: 1.0]
    #[arg(long)]
    pub tau: Option<f64>,

    /// Sample-time grid min:max:count:scale in units of tau
    /// [default: 0:<ticks>:<4*ticks+1>:lin — one full period]
    #[arg(long, allow_hyphen_values = true)]
    pub times: Option<String>,

    /// Reading time for the record entropy, in units of tau, within
    /// (0, ticks] [default: ticks — a full period]
    #[arg(long)]
    pub t_run: Option<f64>,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct DemonArgs {
    #[command(flatten)]
    pub system: SystemArgs,

    /// Clock-resolution sweep min:max:count:scale [default: 0.05:10:12:log]
    #[arg(long)]
    pub tau_grid: Option<String>,

    /// Forward evolution time before the reversal [default: 50]
    #[arg(long)]
    pub t_run: Option<f64>,

    /// Monte Carlo samples over the tick error [default: 256]
    #[arg(long)]
    pub samples: Option<usize>,

    /// Prepend the perfect-clock row (tau_clock = 0, exact reversal)
    #[arg(long)]
    pub include_perfect: bool,

    /// Units of tau-grid and t-run: taub or abs [default: taub]
    #[arg(long)]
    pub unit: Option<String>,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct BoundsArgs {
    /// Mass sweep in kg, min:max:count:scale; the Planck mass is always
    /// inserted [default: 1e-10:1e40:11:log]
    #[arg(long)]
    pub masses: Option<String>,

    /// Energy budget in J for the thermodynamic tick bound (needs
    /// --temperature)
    #[arg(long)]
    pub energy: Option<f64>,

    /// Detector temperature in K for the thermodynamic tick bound (needs
    /// --energy)
    #[arg(long)]
    pub temperature: Option<f64>,

    #[command(flatten)]
    pub output: OutputArgs,
}

/// Runs one parsed command end to end: compute, serialize, write, and
/// optionally report timing to stderr.
pub fn execute(cli: Cli) -> Result<(), CliError> {
    let started = Instant::now();
    let name = cli.command.name();

    let (table, output) = match cli.command {
        Command::Quench(args) => commands::run_quench(args)?,
        Command::Echo(args) => commands::run_echo(args)?,
        Command::Clock(args) => commands::run_clock(args)?,
        Command::Demon(args) => commands::run_demon(args)?,
        Command::Bounds(args) => commands::run_bounds(args)?,
    };

    let text = match output.format.as_deref().unwrap_or("csv") {
        "csv" => table.to_csv(),
        "json" => table.to_json(),
        other => {
            // Commands validate the format up front; reaching this is a bug.
            return Err(CliError::Config(format!("unknown format '{other}'")));
        }
    };

    match &output.out {
        Some(path) => std::fs::write(path, &text)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?,
        None => {
            use std::io::Write as _;
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Io(format!("cannot write to stdout: {e}")))?;
        }
    }

    if output.timing {
        eprintln!("timing: {} {:.3}s", name, started.elapsed().as_secs_f64());
    }
    Ok(())
}

/// Applies `TEMPUS_THREADS` to the global worker pool.  Unset means the
/// library default; results never depend on the value, only speed does.
pub fn init_thread_pool() -> Result<(), CliError> {
    let raw = match std::env::var("TEMPUS_THREADS") {
        Err(std::env::VarError::NotPresent) => return Ok(()),
        Err(e) => {
            return Err(CliError::Config(format!("TEMPUS_THREADS: {e}")));
        }
        Ok(raw) => raw,
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| {
            CliError::Config(format!(
                "TEMPUS_THREADS must be a positive integer, found '{raw}'"
            ))
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Config(format!("cannot size the thread pool: {e}")))
}
