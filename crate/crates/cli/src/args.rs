use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(
    name = "ifs-cavity",
    version,
    about = "V-type atom in an interacting-Fock-space cavity"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the weight table λ_0..λ_nmax.
    Lambda(LambdaArgs),
    /// Amplitudes C_a, C_b, C_c for every block at one time.
    Evolve(EvolveArgs),
    /// Mandel Q over a gt grid.
    Mandel(SweepArgs),
    /// Optimal squeezing S_opt over a gt grid.
    Squeeze(SweepArgs),
    /// All twelve figure panels as CSV + SVG.
    Figures(FiguresArgs),
    /// Paper-vs-oracle deviation report.
    Compare(CompareArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeArg {
    Paper,
    Oracle,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Model and grid flags shared by every subcommand. Unset flags fall back to the
/// `--config` file, then to the defaults.
#[derive(Debug, Clone, Default, Args)]
pub struct ModelFlags {
    /// JSON config file; explicit flags override its values.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// factorial | factorial2 | qbracket | qbracket-factorial | file:PATH
    #[arg(long, value_name = "FAMILY")]
    pub lambda: Option<String>,
    /// Deformation parameter of the q-bracket families.
    #[arg(long)]
    pub q: Option<f64>,
    /// Mean photon number of the initial field.
    #[arg(long)]
    pub nbar: Option<f64>,
    /// Phase of the initial field.
    #[arg(long)]
    pub zeta: Option<f64>,
    /// Atom-field coupling.
    #[arg(long)]
    pub g: Option<f64>,
    /// Cavity decay rate.
    #[arg(long)]
    pub k: Option<f64>,
    #[arg(long = "gt-min")]
    pub gt_min: Option<f64>,
    #[arg(long = "gt-max")]
    pub gt_max: Option<f64>,
    #[arg(long)]
    pub points: Option<usize>,
    /// Field truncation level.
    #[arg(long)]
    pub nmax: Option<usize>,
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct OutputFlags {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write data here instead of stdout; a manifest goes next to it.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct LambdaArgs {
    #[command(flatten)]
    pub model: ModelFlags,
    #[command(flatten)]
    pub output: OutputFlags,
}

#[derive(Debug, Clone, Args)]
pub struct EvolveArgs {
    #[command(flatten)]
    pub model: ModelFlags,
    /// Scaled time gt.
    #[arg(long, default_value_t = 0.0)]
    pub gt: f64,
    #[command(flatten)]
    pub output: OutputFlags,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub model: ModelFlags,
    #[command(flatten)]
    pub output: OutputFlags,
    /// Also draw the series as an SVG line plot.
    #[arg(long, value_name = "PATH.svg")]
    pub plot: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct FiguresArgs {
    #[arg(long = "out-dir", value_name = "DIR")]
    pub out_dir: PathBuf,
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long = "gt-max")]
    pub gt_max: Option<f64>,
    #[arg(long)]
    pub nmax: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub model: ModelFlags,
    #[command(flatten)]
    pub output: OutputFlags,
}
