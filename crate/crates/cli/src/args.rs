use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "frailmix", version)]
#[command(about = "Frailty/resilience mixtures, ageing classes and shifted stochastic orders")]
#[command(arg_required_else_help = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum NullArg {
    Fixed,
    Refit,
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    /// Directory for the JSON report and any curve files.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// What goes to stdout.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug, Clone)]
pub struct GridArgs {
    /// `x_lo,x_hi,n`.
    #[arg(long)]
    pub grid: Option<String>,
    /// Comma-separated shifts.
    #[arg(long)]
    pub t: Option<String>,
    #[arg(long, default_value_t = 1e-9)]
    pub slack: f64,
}

#[derive(Args, Debug, Clone)]
pub struct DataArgs {
    /// One positive value per line; `#` starts a comment.
    #[arg(long)]
    pub data: PathBuf,
}

/// Baseline parameters; fitted by maximum likelihood when omitted.
#[derive(Args, Debug, Clone)]
pub struct BaselineArgs {
    #[arg(long, requires = "shape")]
    pub scale: Option<f64>,
    #[arg(long, requires = "scale")]
    pub shape: Option<f64>,
}

#[derive(Args, Debug, Clone)]
pub struct BootstrapArgs {
    #[arg(long, default_value_t = 20_240_601)]
    pub seed: u64,
    #[arg(long, default_value_t = 10_000)]
    pub replicates: usize,
    #[arg(long, value_enum, default_value_t = NullArg::Fixed)]
    pub null: NullArg,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Weibull maximum-likelihood fit with profile-likelihood intervals.
    FitBaseline {
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Anderson–Darling test with a parametric-bootstrap null.
    AdTest {
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        baseline: BaselineArgs,
        #[command(flatten)]
        bootstrap: BootstrapArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Weibull QQ pairs.
    Qq {
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        baseline: BaselineArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Truncated-gamma frailty parameter `a`, baseline frozen.
    FitFrailty {
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        baseline: BaselineArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Truncated-gamma resilience parameter `a`, baseline frozen.
    FitResilience {
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        baseline: BaselineArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Ageing-class membership on a grid.
    Classify {
        /// Distribution spec, e.g. `weibull scale=1 shape=2`.
        #[arg(long)]
        dist: String,
        /// One class (ILR, DLR, IFR, DFR, DRFR, IRFR, IMRL, DMRL, IMIT) or `all`.
        #[arg(long, default_value = "all")]
        class: String,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Is `X ≤_rel Y` on the grid?
    CheckOrder {
        #[arg(long)]
        rel: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        /// Also run the implied pointwise comparison.
        #[arg(long)]
        consequence: bool,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Checks a theorem's hypotheses and conclusion on one instance.
    VerifyTheorem {
        /// Theorem id, e.g. `3.1i`, `4.4ii`, `mit-ii`.
        id: String,
        #[arg(long)]
        baseline: String,
        #[arg(long)]
        mixing: String,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Data scenarios and the built-in example instances.
    Reproduce {
        #[arg(value_enum)]
        target: Target,
        #[arg(long)]
        data: Option<PathBuf>,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        bootstrap: BootstrapArgs,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Scenario1,
    Scenario2,
    Examples,
}
