//! `mcur`: decompose, fill and inspect integer 1-chains from text files.
//!
//! Exit status is 0 on success, 1 when an input cannot be read or parsed,
//! and 2 when the inputs parse but violate an operation's precondition.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "mcur", version, about = "Integral 1-currents on weighted complexes")]
struct Cli {
    /// Seed for randomized sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decompose a chain into indecomposable components.
    Decompose(DecomposeArgs),
    /// Flat norm of a chain with an optimal witness.
    Flatnorm(ChainArgs),
    /// Minimal 2-chain filling of a boundaryless chain.
    Fill(FillArgs),
    /// Indecomposability of a chain, or validity of a `.dec` file.
    Check(CheckArgs),
    /// Classify, split and currentify a walk.
    Curve(CurveArgs),
    /// Simplicity, components and Jordan loop of a PBM pixel set.
    Planar(PlanarArgs),
    /// Flat-norm ratios over every chain in a directory.
    Report(ReportArgs),
}

#[derive(Args, Debug)]
struct ChainArgs {
    #[arg(long)]
    complex: PathBuf,
    #[arg(long)]
    chain: PathBuf,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Heuristic,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum DecomposeMethod {
    Greedy,
    #[value(name = "variational_oracle")]
    VariationalOracle,
}

#[derive(Args, Debug)]
struct DecomposeArgs {
    #[command(flatten)]
    input: ChainArgs,
    #[arg(long, value_enum, default_value_t = Mode::Heuristic)]
    mode: Mode,
    #[arg(long, value_enum, default_value_t = DecomposeMethod::Greedy)]
    method: DecomposeMethod,
    /// Exponent of the energy for the variational oracle, in (1, 2).
    #[arg(long, default_value = "3/2")]
    alpha: String,
    /// Write the decomposition as a `.dec` file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Render the components as SVG.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Also report the big-component ratio.
    #[arg(long)]
    bound: bool,
}

#[derive(Args, Debug)]
struct FillArgs {
    #[command(flatten)]
    input: ChainArgs,
    /// Write the filling as a 2-chain.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[arg(long)]
    complex: PathBuf,
    #[arg(long, required_unless_present = "dec")]
    chain: Option<PathBuf>,
    /// Validate a decomposition file instead.
    #[arg(long, conflicts_with = "chain")]
    dec: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CurveArgs {
    #[arg(long)]
    complex: PathBuf,
    #[arg(long)]
    walk: PathBuf,
    /// Split a self-intersecting walk into injective pieces.
    #[arg(long)]
    split: bool,
    /// Write the currentification as a `.ch1` file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum PlanarCheck {
    Simple,
    Components,
    Loop,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum PlanarMethod {
    #[value(name = "via_boundary")]
    ViaBoundary,
    #[value(name = "via_connectivity")]
    ViaConnectivity,
}

#[derive(Args, Debug)]
struct PlanarArgs {
    #[arg(long)]
    image: PathBuf,
    #[arg(long, value_enum, default_value_t = PlanarCheck::Simple)]
    check: PlanarCheck,
    #[arg(long, value_enum, default_value_t = PlanarMethod::ViaBoundary)]
    method: PlanarMethod,
    /// Render the set, and its Jordan loop if simple, as SVG.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Write the Jordan loop as a `.wlk` file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ReportArgs {
    #[arg(long)]
    complex: PathBuf,
    /// Directory of `.ch1` files, read in name order.
    #[arg(long)]
    dir: Option<PathBuf>,
    /// Additionally sample this many random chains (`|coefficient| ≤ 3`).
    #[arg(long, default_value_t = 0)]
    random: usize,
    #[arg(long, value_enum, default_value_t = Mode::Heuristic)]
    mode: Mode,
    /// Write the table here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Scatter plot of the big-component ratio.
    #[arg(long)]
    svg: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(e) = commands::configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(e.exit_code());
    }
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
