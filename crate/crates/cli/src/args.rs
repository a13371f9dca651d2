use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "yrk", version, about = "Yangian representations and their meromorphic R-matrices")]
pub struct Cli {
    /// Output file; stdout when absent.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Exact,
    Float,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DirectionArg {
    Up,
    Down,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build or verify a representation.
    #[command(subcommand)]
    Rep(RepCmd),
    /// Tensor two representations at a fixed `s`.
    Tensor(TensorArgs),
    /// The lower triangular factor `R⁻(s)` as a rational matrix.
    Rminus(RminusArgs),
    /// The abelian factor `R⁰(s)`.
    Rzero(RzeroArgs),
    /// The full R-matrix `R^ε(s)`.
    Rfull(RfullArgs),
    /// Identity checks on the full R-matrix.
    Check(CheckArgs),
    /// Run a whole battery.
    #[command(subcommand)]
    Suite(SuiteCmd),
}

#[derive(Debug, Subcommand)]
pub enum RepCmd {
    /// Evaluation module of `sl_n` (`sl2-eval` or `eval`).
    Build(BuildArgs),
    /// Check all relation families on a representation file.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[arg(long = "type", default_value = "sl2-eval")]
    pub kind: String,
    /// Cartan type for `--type eval`, e.g. `A2`.
    #[arg(long, default_value = "A1")]
    pub cartan: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub a: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub hbar: String,
    /// Multiply every `x^-_{i,0}` by this factor (negative controls).
    #[arg(long, allow_hyphen_values = true)]
    pub scale_xm0: Option<String>,
    #[arg(long, env = "YRK_BACKEND", value_enum, default_value_t = BackendArg::Exact)]
    pub backend: BackendArg,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub rep: PathBuf,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    #[arg(long, default_value_t = 5)]
    pub samples: usize,
    /// Tolerance; 0 on the exact backend by default, 1e-8 on floats.
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Args)]
pub struct TensorArgs {
    #[arg(long, default_value = "drinfeld")]
    pub mode: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub s: String,
    pub v1: PathBuf,
    pub v2: PathBuf,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    #[arg(long)]
    pub v1: PathBuf,
    #[arg(long)]
    pub v2: PathBuf,
}

#[derive(Debug, Args)]
pub struct RminusArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    #[arg(long, default_value = "recursion")]
    pub method: String,
    /// Values `α_i(h)` of the regular element, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    pub h: Option<String>,
}

#[derive(Debug, Args)]
#[command(args_conflicts_with_subcommands = true)]
pub struct RzeroArgs {
    #[command(subcommand)]
    pub cmd: Option<RzeroCmd>,
    #[arg(long)]
    pub v1: Option<PathBuf>,
    #[arg(long)]
    pub v2: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = DirectionArg::Up)]
    pub direction: DirectionArg,
    #[arg(long, allow_hyphen_values = true)]
    pub s: Option<String>,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
}

#[derive(Debug, Subcommand)]
pub enum RzeroCmd {
    /// The formal series `R⁰(s)` in `s^{-1}`.
    Formal {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value_t = 6)]
        order: usize,
    },
    /// `η⁰ = (R^{0,↑})^{-1} R^{0,↓}` at sample points, with periodicity checks.
    Eta {
        #[command(flatten)]
        pair: PairArgs,
        /// Comma separated points.
        #[arg(long, default_value = "0.3,0.7,1.1", allow_hyphen_values = true)]
        samples: String,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
}

#[derive(Debug, Args)]
pub struct RfullArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    #[arg(long, value_enum, default_value_t = DirectionArg::Up)]
    pub direction: DirectionArg,
    #[arg(long, allow_hyphen_values = true)]
    pub s: Option<String>,
    /// Emit the series through `s^{-N}` instead of a value.
    #[arg(long)]
    pub series: Option<usize>,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    Qybe,
    Cabling,
    Unitarity,
    Asymptotics,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(value_enum)]
    pub kind: CheckKind,
    #[arg(long, num_args = 1..=3, required = true)]
    pub reps: Vec<PathBuf>,
    #[arg(long, value_enum, default_value_t = DirectionArg::Up)]
    pub direction: DirectionArg,
    #[arg(long, allow_hyphen_values = true)]
    pub s1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub s2: Option<String>,
    #[arg(long, default_value_t = 1e-7)]
    pub tol: f64,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    #[arg(long, default_value_t = 5)]
    pub samples: usize,
    /// Truncation order for `asymptotics`.
    #[arg(long, default_value_t = 2)]
    pub k: usize,
}

#[derive(Debug, Subcommand)]
pub enum SuiteCmd {
    /// Every acceptance criterion on the built-in fixtures.
    Full {
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}
