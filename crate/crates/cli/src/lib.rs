//! Command-line front end: argument model, dispatch, and exit codes.
//!
//! Every subcommand produces one serializable report. JSON output keeps
//! field order; `table` and `csv` are rendered from the same value, so all
//! three formats are deterministic for a given input and seed.

mod commands;
mod input;
mod render;
pub mod reports;

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use diamlab::bounds::ints::DEFAULT_FACTOR_BOUND;
use diamlab::cayley::{DEFAULT_CAP_ORDER, DEFAULT_KMAX};
use diamlab::matrix::DEFAULT_EXP_BITS;

pub use input::load_text;
pub use render::render;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;
pub const EXIT_CAP: i32 = 4;
pub const EXIT_INCOMPLETE: i32 = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
    Csv,
}

/// One invocation. Inputs (`--in`, `--cert`, `--gens`, `--elem`,
/// `--targets`) accept inline JSON, `@path`, or a plain path.
#[derive(Clone, Debug, Parser)]
#[command(
    name = "diamlab",
    version,
    about = "Finite-field matrix degree reduction and Cayley-graph lab"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long = "in", global = true)]
    pub input: Option<String>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest group the Cayley commands will enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP_ORDER)]
    pub cap_order: usize,
    /// Bit-length ceiling for direct matrix powering.
    #[arg(long, global = true, default_value_t = DEFAULT_EXP_BITS)]
    pub cap_exp_bits: u64,
    /// Trial-division bound for integer factorization.
    #[arg(long, global = true, default_value_t = DEFAULT_FACTOR_BOUND)]
    pub factor_bound: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Build GF(p^e) and print its defining polynomial.
    Field {
        #[arg(long)]
        p: u64,
        /// Extension degree; defaults to 1, or to the degree of `--modulus`.
        #[arg(long)]
        e: Option<u32>,
        /// Explicit modulus as a JSON coefficient array, low degree first.
        #[arg(long)]
        modulus: Option<String>,
    },
    /// Factor the polynomial given by `--in`.
    Factor,
    /// Singer polynomial of degree `--d`, or with `--block N` the block
    /// diagonal matrix of Singer companions for the primes selected for `N`.
    Singer {
        #[arg(long)]
        p: u64,
        /// Extension degree; defaults to 1, or to the degree of `--modulus`.
        #[arg(long)]
        e: Option<u32>,
        #[arg(long)]
        modulus: Option<String>,
        #[arg(long, conflicts_with = "block")]
        d: Option<usize>,
        #[arg(long)]
        block: Option<usize>,
        /// Identity padding; defaults to `N - d`.
        #[arg(long, requires = "block")]
        pad: Option<usize>,
    },
    /// Generalized Jordan structure of the matrix given by `--in`.
    Jordan,
    /// Run the degree reduction on the matrix given by `--in`.
    Reduce,
    /// Check a reduction certificate against its matrix.
    Verify {
        #[arg(long)]
        cert: String,
        /// Also power the matrix directly when the exponent fits the ceiling.
        #[arg(long)]
        direct: bool,
    },
    /// Cayley-graph diameter of the group generated by `--gens`.
    Diameter {
        #[arg(long)]
        gens: Option<String>,
        /// Maximize over every generating set of the group (order <= 16).
        #[arg(long)]
        exhaustive: bool,
    },
    /// Class covering number of `--elem` in the group generated by `--gens`.
    Cover {
        #[arg(long)]
        gens: Option<String>,
        #[arg(long)]
        elem: String,
        #[arg(long, default_value_t = DEFAULT_KMAX)]
        kmax: usize,
    },
    /// Shortest word whose characteristic polynomial has the given factors.
    Lowdeg {
        #[arg(long)]
        gens: Option<String>,
        #[arg(long)]
        targets: String,
    },
    /// Explicit bound calculators.
    Bounds {
        #[command(subcommand)]
        which: BoundsCommand,
    },
}

#[derive(Clone, Debug, Subcommand)]
pub enum BoundsCommand {
    /// Compare the exponent with the `n (log n + log q)^3 log q` bound.
    Compare {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 1.0)]
        c_main: f64,
        #[arg(long, default_value_t = 1.0)]
        c4: f64,
        #[arg(long, default_value_t = 1.0)]
        c5: f64,
    },
    /// Sylow-chain bound for `GL(m, q)`.
    Sylow {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        p: u64,
    },
    /// Odd-primorial prime selection and its empirical ratios.
    Erdos {
        #[arg(long)]
        n: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Invalid,
    Mismatch,
    CapExceeded,
    IncompleteFactorization,
}

impl ErrorKind {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorKind::Invalid => EXIT_INVALID,
            ErrorKind::Mismatch => EXIT_MISMATCH,
            ErrorKind::CapExceeded => EXIT_CAP,
            ErrorKind::IncompleteFactorization => EXIT_INCOMPLETE,
        }
    }

    fn label(self) -> &'static str {
        match self {
            ErrorKind::Invalid => "invalid_input",
            ErrorKind::Mismatch => "mismatch",
            ErrorKind::CapExceeded => "cap_exceeded",
            ErrorKind::IncompleteFactorization => "incomplete_factorization",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliError {
    pub kind: ErrorKind,
    pub reason: String,
}

impl CliError {
    pub fn new(kind: ErrorKind, reason: impl fmt::Display) -> Self {
        // keep the reason on one line
        let reason = reason
            .to_string()
            .split_whitespace()
            .collect::<Vec<_>>()
            .join(" ");
        CliError { kind, reason }
    }

    pub fn invalid(reason: impl fmt::Display) -> Self {
        CliError::new(ErrorKind::Invalid, reason)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "error: {}: {}", self.kind.label(), self.reason)
    }
}

impl std::error::Error for CliError {}

/// A finished command: its report and the exit code to return with it.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub value: serde_json::Value,
    pub code: i32,
    /// Set when the report is written but the run still failed.
    pub failure: Option<CliError>,
}

/// Runs the command and returns its report without writing anything.
pub fn execute(cfg: &RunConfig) -> Result<Outcome, CliError> {
    if cfg.cap_order == 0 || cfg.cap_exp_bits == 0 || cfg.factor_bound == 0 {
        return Err(CliError::invalid("caps must be positive"));
    }
    commands::dispatch(cfg)
}

/// Runs the command, writes the rendered report to `--out` or stdout and
/// any error line to stderr. Returns the process exit code.
pub fn run(cfg: &RunConfig) -> i32 {
    let outcome = match execute(cfg) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("{e}");
            return e.kind.exit_code();
        }
    };
    let text = match render(&outcome.value, cfg.format) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("{e}");
            return e.kind.exit_code();
        }
    };
    let written = match &cfg.out {
        Some(path) => fs::write(path, &text)
            .map_err(|e| CliError::invalid(format!("{}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::invalid(format!("stdout: {e}"))),
    };
    if let Err(e) = written {
        eprintln!("{e}");
        return e.kind.exit_code();
    }
    if let Some(e) = &outcome.failure {
        eprintln!("{e}");
    }
    outcome.code
}

/// Parses `args` (including the program name) and runs. Help and version
/// requests exit 0; any other parse error is reported on one line.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(cfg) => run(&cfg),
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            EXIT_OK
        }
        Err(e) => {
            let first = e
                .to_string()
                .lines()
                .next()
                .unwrap_or_default()
                .trim_start_matches("error: ")
                .to_string();
            eprintln!("{}", CliError::invalid(first));
            EXIT_INVALID
        }
    }
}
