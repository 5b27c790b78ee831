//! Command-line surface for `atomdec`.
//!
//! [`run_args`] parses an argument vector and runs one subcommand, returning
//! what to print and the exit code, so tests can drive the binary without a
//! process. Exit codes: 0 ok, 1 a property failed or engines disagreed,
//! 2 usage or parse error, 3 resource limit.

use std::ffi::OsString;
use std::fmt;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

mod commands;
mod envelope;
mod labels;

pub use commands::{
    cmd_check, cmd_decomps, cmd_enumerate, cmd_export_dot, cmd_metric, cmd_nmin, cmd_red_count,
    cmd_red_count_with, cmd_red_table, cmd_red_table_with, hasse_dot,
};
pub use envelope::{OutputEnvelope, SCHEMA_VERSION};
pub use labels::Labels;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_LIMIT: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "atomdec",
    version,
    about = "Exact counts of atomic decompositions of set partitions"
)]
pub struct Cli {
    /// Names for the elements 0..n-1, comma separated. Inputs may then use
    /// the names, and echoed inputs gain a named rendering.
    #[arg(long, global = true, value_delimiter = ',')]
    pub labels: Option<Vec<String>>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the partitions of {0..n-1} in restricted-growth order.
    Enumerate(EnumerateArgs),
    /// Count the minimal decompositions of a partition.
    Nmin(NminArgs),
    /// The distance d between two partitions.
    Metric(MetricArgs),
    /// List the decompositions of a partition.
    Decomps(DecompsArgs),
    /// Count partitions of rank j reachable by joining s red atoms.
    RedCount(RedCountArgs),
    /// The full rank/size table for a red set.
    RedTable(RedTableArgs),
    /// Run property checks over all partitions of an n-set.
    Check(CheckArgs),
    /// Write a graph or the Hasse diagram as DOT.
    ExportDot(ExportDotArgs),
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub n: usize,
    /// Keep only partitions of this rank.
    #[arg(long)]
    pub rank: Option<usize>,
    /// Stop after this many partitions.
    #[arg(long)]
    pub limit: Option<usize>,
}

#[derive(Debug, Args)]
pub struct NminArgs {
    /// Partition such as `0,1,2|3`.
    pub partition: String,
    #[arg(long, value_enum, default_value_t = Convention::FinestZero)]
    pub convention: Convention,
}

#[derive(Debug, Args)]
pub struct MetricArgs {
    pub left: String,
    pub right: String,
}

/// Records written by `decomps` when `--limit` is not given.
pub const DEFAULT_DECOMPS_LIMIT: usize = 10_000;

#[derive(Debug, Args)]
pub struct DecompsArgs {
    pub partition: String,
    /// Only spanning forests (minimal decompositions).
    #[arg(long)]
    pub minimal_only: bool,
    /// Most records to write.
    #[arg(long, default_value_t = DEFAULT_DECOMPS_LIMIT)]
    pub limit: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EngineChoice {
    Oracle,
    Recursive,
    /// Run both and fail on any disagreement.
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Convention {
    /// The finest partition has no decomposition.
    FinestZero,
    /// The finest partition counts the empty product, 1.
    EmptyProduct,
}

impl From<Convention> for atomdec::NminConvention {
    fn from(c: Convention) -> Self {
        match c {
            Convention::FinestZero => atomdec::NminConvention::FinestIsZero,
            Convention::EmptyProduct => atomdec::NminConvention::EmptyProduct,
        }
    }
}

#[derive(Debug, Args)]
pub struct RedCountArgs {
    #[arg(long)]
    pub n: usize,
    /// Red atoms, such as `0-1,1-2`.
    #[arg(long, allow_hyphen_values = true)]
    pub reds: String,
    #[arg(long)]
    pub rank: usize,
    #[arg(long)]
    pub size: usize,
    #[arg(long, value_enum, default_value_t = EngineChoice::Both)]
    pub engine: EngineChoice,
    /// Leave the empty join out of the reachable total when there are red
    /// atoms.
    #[arg(long)]
    pub nonempty_joins: bool,
}

#[derive(Debug, Args)]
pub struct RedTableArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub reds: String,
    #[arg(long, value_enum, default_value_t = EngineChoice::Both)]
    pub engine: EngineChoice,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub nonempty_joins: bool,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long)]
    pub n: usize,
    /// Properties to check, comma separated; all when omitted.
    #[arg(long, value_delimiter = ',')]
    pub properties: Option<Vec<atomdec::Property>>,
    #[arg(long, value_enum, default_value_t = Convention::FinestZero)]
    pub convention: Convention,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("what").required(true).args(["partition", "reds", "hasse"])))]
pub struct ExportDotArgs {
    /// The graph `G_π` of a partition.
    #[arg(long)]
    pub partition: Option<String>,
    /// The red graph on `--n` vertices.
    #[arg(long, requires = "n", allow_hyphen_values = true)]
    pub reds: Option<String>,
    /// The Hasse diagram of the partitions of an n-set.
    #[arg(long)]
    pub hasse: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
}

/// Everything that stops a command before it has a result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Usage(String),
    Limit(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Limit(_) => EXIT_LIMIT,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "error: {m}"),
            CliError::Limit(m) => write!(f, "error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<atomdec::Error> for CliError {
    fn from(e: atomdec::Error) -> Self {
        if e.is_resource_limit() {
            CliError::Limit(format!(
                "{e}; raise the matching ATOMDEC_MAX_* variable to allow it"
            ))
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

/// What a command produced: text for stdout, diagnostics for stderr, and
/// whether a check failed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Report {
    pub stdout: String,
    pub stderr: String,
    pub failed: bool,
}

impl Report {
    pub fn ok(stdout: String) -> Self {
        Report {
            stdout,
            ..Report::default()
        }
    }
}

/// A finished run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

/// Runs an already parsed command line.
pub fn run(cli: &Cli) -> Outcome {
    let result =
        Labels::new(cli.labels.clone().unwrap_or_default()).and_then(|labels| match &cli.command {
            Command::Enumerate(a) => cmd_enumerate(a, &labels),
            Command::Nmin(a) => cmd_nmin(a, &labels),
            Command::Metric(a) => cmd_metric(a, &labels),
            Command::Decomps(a) => cmd_decomps(a, &labels),
            Command::RedCount(a) => cmd_red_count(a, &labels),
            Command::RedTable(a) => cmd_red_table(a, &labels),
            Command::Check(a) => cmd_check(a, &labels),
            Command::ExportDot(a) => cmd_export_dot(a, &labels),
        });
    finish(result)
}

/// Turns a command's result into printable output and an exit code.
pub fn finish(result: Result<Report, CliError>) -> Outcome {
    match result {
        Ok(r) => Outcome {
            code: if r.failed { EXIT_FAILURE } else { EXIT_OK },
            stdout: r.stdout,
            stderr: r.stderr,
        },
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: format!("{e}\n"),
            code: e.exit_code(),
        },
    }
}

/// Parses `args` (program name first) and runs the command. Help and
/// version requests exit 0; malformed arguments exit 2.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code: EXIT_USAGE,
                }
            } else {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code: EXIT_OK,
                }
            }
        }
    }
}
