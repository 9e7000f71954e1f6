//! Command-line front end: argument parsing, report formatting and the
//! incidence-graph export.

pub mod commands;
pub mod snowflake;
pub mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use ternion_core::{Bounds, FiniteField, FreeModule, SubmoduleOrbit};

/// Version of every JSON document this tool writes.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Parser)]
#[command(
    name = "ternion",
    version,
    about = "Vectors, cyclic submodules and PG(n,q) over ternion rings"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Field order, as `P^K` or as a prime power `N`
    #[arg(long, global = true, default_value = "2", value_parser = parse_order)]
    pub q: (u64, u32),
    /// The module is R^(n+1)
    #[arg(long, global = true, default_value_t = 2)]
    pub n: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads for the parallel scans (default: all cores)
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Largest number of vectors an exhaustive scan may visit
    #[arg(long, global = true, default_value_t = ternion_core::DEFAULT_FULL_SPACE_BOUND)]
    pub bound: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the orbit of a vector
    Classify {
        /// Vector literal: ternions `x,y,z` separated by `;`
        #[arg(long)]
        vector: String,
        /// Also print the reduction matrix and check X*A = D
        #[arg(long)]
        reduce: bool,
    },
    /// Reduce a vector to its orbit representative, printing every step
    Reduce {
        #[arg(long)]
        vector: String,
    },
    /// List the cyclic submodules of one orbit
    Enumerate {
        #[arg(long, default_value = "cs4", value_parser = parse_orbit)]
        orbit: SubmoduleOrbit,
    },
    /// Orbit and incidence counts
    Counts {
        /// Compare the closed forms against exhaustive enumeration
        #[arg(long)]
        brute_force: bool,
    },
    /// Run every check for one (q, n)
    Verify,
    /// Check that the radical traces of the NFCS are the lines of PG(n,q)
    PgCheck {
        /// Write the line set as JSON
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Export the incidence structure of vectors and NFCS
    ExportSnowflake {
        /// JSON output file (stdout when absent)
        #[arg(long)]
        output: Option<PathBuf>,
        /// Also write a Graphviz file
        #[arg(long)]
        dot: Option<PathBuf>,
    },
}

fn parse_order(s: &str) -> Result<(u64, u32), String> {
    let (p, k) = match s.split_once('^') {
        Some((p, k)) => (
            p.trim()
                .parse::<u64>()
                .map_err(|e| format!("bad prime `{p}`: {e}"))?,
            k.trim()
                .parse::<u32>()
                .map_err(|e| format!("bad exponent `{k}`: {e}"))?,
        ),
        None => {
            let q = s
                .trim()
                .parse::<u64>()
                .map_err(|e| format!("bad order `{s}`: {e}"))?;
            let (p, k) =
                ternion_core::gf::prime_power(q).ok_or(format!("{q} is not a prime power"))?;
            (p, k)
        }
    };
    if !ternion_core::gf::is_prime(p) {
        return Err(format!("{p} is not prime"));
    }
    if k == 0 {
        return Err("exponent must be at least 1".into());
    }
    Ok((p, k))
}

fn parse_orbit(s: &str) -> Result<SubmoduleOrbit, String> {
    s.parse().map_err(|e: ternion_core::Error| e.to_string())
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Bound(String),
    #[error("verification failed")]
    Failed,
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Failed | CliError::Io(_) | CliError::Json(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Bound(_) => 3,
        }
    }
}

impl From<ternion_core::Error> for CliError {
    fn from(e: ternion_core::Error) -> Self {
        use ternion_core::Error as E;
        match e {
            E::BoundExceeded { .. } | E::FieldTooLarge { .. } => CliError::Bound(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl GlobalArgs {
    pub fn module(&self) -> Result<FreeModule, CliError> {
        let (p, k) = self.q;
        let field = FiniteField::new(p, k)?;
        Ok(FreeModule::new(field, self.n)?.with_bounds(Bounds::with_vector_bound(self.bound)))
    }
}

/// Runs a parsed command, writing its report to `out`.
pub fn run(cli: &Cli, out: &mut dyn std::io::Write) -> Result<(), CliError> {
    match cli.global.threads {
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build()
                .map_err(|e| CliError::Usage(e.to_string()))?;
            // the writer may not be Send, so buffer inside the pool
            let mut buf = Vec::new();
            let result = pool.install(|| commands::dispatch(cli, &mut buf));
            out.write_all(&buf)?;
            result
        }
        None => commands::dispatch(cli, out),
    }
}

/// Parses `args`, runs, and maps the outcome to an exit code.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match run(&cli, &mut lock) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            if !matches!(e, CliError::Failed) {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
