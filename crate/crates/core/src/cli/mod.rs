//! The `bernint` command line.
//!
//! Settings are merged as defaults, then the `--config` JSON file, then
//! flags. Reports go to `--out` (written atomically) or stdout.

pub mod commands;
pub mod config;
pub mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

pub use config::{Format, RunConfig, Settings};
use commands::Outcome;
use output::{to_json, write_atomic};

use crate::error::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "bernint", version, about = "Bernstein operators with integer coefficients")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// List the built-in functions
    ListFns,
    /// Dump the coefficient construction for each n
    Coeffs,
    /// Evaluate the model at the --x points
    Eval,
    /// Sup-norm error of the s-th derivative
    Error,
    /// Error curve plus a fitted power law
    Rate,
    /// Moduli of smoothness of f^(s)
    Modulus,
    /// Saturation verdict from n * error
    Saturation,
    /// Error rate against modulus slopes
    Converse,
    /// Check the hypotheses for order s
    Verify,
    /// n (B_n f(x) - f(x)) against its limit
    Voronovskaya,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::ListFns => "list-fns",
            Command::Coeffs => "coeffs",
            Command::Eval => "eval",
            Command::Error => "error",
            Command::Rate => "rate",
            Command::Modulus => "modulus",
            Command::Saturation => "saturation",
            Command::Converse => "converse",
            Command::Verify => "verify",
            Command::Voronovskaya => "voronovskaya",
        }
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// Built-in function, e.g. monomial(2) or holder_interior(1/2)
    #[arg(long = "fn", global = true, value_name = "NAME")]
    pub function: Option<String>,
    /// classic, floor or nearest
    #[arg(long, global = true)]
    pub kind: Option<String>,
    /// half_up, half_down, half_away or half_even
    #[arg(long, global = true)]
    pub tie: Option<String>,
    /// Derivative order
    #[arg(long, global = true)]
    pub s: Option<usize>,
    /// Smallest degree of the sweep
    #[arg(long, global = true)]
    pub n_min: Option<usize>,
    /// Largest degree of the sweep
    #[arg(long, global = true)]
    pub n_max: Option<usize>,
    /// Ratio of the geometric degree sweep
    #[arg(long, global = true)]
    pub n_factor: Option<f64>,
    /// Explicit degrees, comma separated; overrides the sweep
    #[arg(long, global = true, value_delimiter = ',')]
    pub n: Option<Vec<usize>>,
    /// Grid points for sup-norms and moduli
    #[arg(long, global = true)]
    pub grid: Option<usize>,
    /// Refinement rounds around the grid maximum
    #[arg(long, global = true)]
    pub refine: Option<usize>,
    /// clustered or uniform
    #[arg(long, global = true)]
    pub distribution: Option<String>,
    /// Modulus steps, comma separated
    #[arg(long, global = true, value_delimiter = ',')]
    pub t: Option<Vec<f64>>,
    /// Rational evaluation points, comma separated
    #[arg(long, global = true, value_delimiter = ',')]
    pub x: Option<Vec<String>>,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// json or csv
    #[arg(long, global = true)]
    pub format: Option<String>,
    /// Exit with status 1 when a hypothesis or check fails
    #[arg(long, global = true)]
    pub strict: bool,
    /// JSON file with the same keys in snake_case
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

impl Flags {
    fn settings(&self) -> Settings {
        let f = self.clone();
        Settings {
            function: f.function,
            kind: f.kind,
            tie: f.tie,
            s: f.s,
            n_min: f.n_min,
            n_max: f.n_max,
            n_factor: f.n_factor,
            n: f.n,
            grid: f.grid,
            refine: f.refine,
            distribution: f.distribution,
            t: f.t,
            x: f.x,
            out: f.out,
            format: f.format,
            strict: f.strict.then_some(true),
        }
    }

    /// Defaults, then the config file, then the flags.
    pub fn resolve(&self) -> Result<RunConfig> {
        let file = match &self.config {
            Some(path) => Settings::from_file(path)?,
            None => Settings::default(),
        };
        RunConfig::resolve(file.overlay(self.settings()))
    }
}

#[derive(Serialize)]
struct Report<'a, T> {
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    config: &'a RunConfig,
    result: &'a T,
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::HypothesisViolation(_) => EXIT_FAILURE,
        Error::InvalidArgument(_)
        | Error::Lookup(_)
        | Error::Capability { .. }
        | Error::Config { .. }
        | Error::InsufficientData { .. } => EXIT_USAGE,
        Error::PrecisionInsufficient
        | Error::PrecisionExhausted { .. }
        | Error::Io(_)
        | Error::Serialization(_) => EXIT_INTERNAL,
    }
}

fn emit<T: Serialize>(command: Command, cfg: &RunConfig, outcome: Outcome<T>) -> Result<Option<String>> {
    let bytes = match cfg.format {
        Format::Json => to_json(&Report {
            tool: "bernint",
            version: env!("CARGO_PKG_VERSION"),
            command: command.name(),
            config: cfg,
            result: &outcome.result,
        })?,
        Format::Csv => outcome.table.to_csv()?,
    };
    match &cfg.out {
        Some(path) => write_atomic(path, &bytes)?,
        None => std::io::stdout().lock().write_all(&bytes)?,
    }
    Ok(outcome.failure)
}

/// Runs one command and returns its failure message, if any.
pub fn execute(command: Command, cfg: &RunConfig) -> Result<Option<String>> {
    match command {
        Command::ListFns => emit(command, cfg, commands::list_fns(cfg)?),
        Command::Coeffs => emit(command, cfg, commands::coeffs(cfg)?),
        Command::Eval => emit(command, cfg, commands::eval(cfg)?),
        Command::Error => emit(command, cfg, commands::error(cfg)?),
        Command::Rate => emit(command, cfg, commands::rate(cfg)?),
        Command::Modulus => emit(command, cfg, commands::modulus(cfg)?),
        Command::Saturation => emit(command, cfg, commands::saturation(cfg)?),
        Command::Converse => emit(command, cfg, commands::converse(cfg)?),
        Command::Verify => emit(command, cfg, commands::verify(cfg)?),
        Command::Voronovskaya => emit(command, cfg, commands::voronovskaya(cfg)?),
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let started = Instant::now();
    let result = cli.flags.resolve().and_then(|cfg| {
        let failure = execute(cli.command, &cfg)?;
        Ok((cfg, failure))
    });
    match result {
        Ok((cfg, failure)) => {
            eprintln!("bernint {}: done in {:.3} s", cli.command.name(), started.elapsed().as_secs_f64());
            match failure {
                Some(msg) if cfg.strict => {
                    eprintln!("bernint: check failed: {msg}");
                    EXIT_FAILURE
                }
                Some(msg) => {
                    eprintln!("bernint: warning: {msg}");
                    EXIT_OK
                }
                None => EXIT_OK,
            }
        }
        Err(e) => {
            eprintln!("bernint: error: {e}");
            exit_code(&e)
        }
    }
}
