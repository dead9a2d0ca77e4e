//! Command-line interface definition. All options are long-form only.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hueforge_core::tmo::TmOperator;

#[derive(Debug, Parser)]
#[command(
    name = "hueforge",
    version,
    about = "Tone-map HDR images, compensate hue distortion, and measure the result",
    disable_help_subcommand = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tone-map HDR images to 8-bit LDR images.
    Tonemap(TonemapArgs),
    /// Transplant HDR hues onto an existing tone-mapped image.
    Compensate(CompensateArgs),
    /// Measure hue distortion and quality of an LDR image against its HDR source.
    Metrics(MetricsArgs),
    /// Run the full conventional/proposed(/baseline) comparison over a corpus.
    Compare(CompareArgs),
}

fn parse_operator(s: &str) -> Result<TmOperator, String> {
    s.parse().map_err(|e: hueforge_core::Error| e.to_string())
}

/// Tone mapping and reconstruction options shared by several commands.
#[derive(Debug, Args, Clone)]
pub struct PipelineArgs {
    /// Tone mapping operator (repeatable): reinhard_global, reinhard_local,
    /// drago, durand.
    #[arg(long = "tmo", value_parser = parse_operator, required = true)]
    pub tmo: Vec<TmOperator>,

    /// Reinhard key value in [0, 1].
    #[arg(long, default_value_t = 0.18)]
    pub alpha: f64,

    /// Drago bias in (0, 1].
    #[arg(long, default_value_t = 0.85)]
    pub bias: f64,

    /// Durand base-layer contrast target (> 1).
    #[arg(long, default_value_t = 50.0)]
    pub contrast: f64,

    /// Display gamma applied before quantization.
    #[arg(long, default_value_t = 2.2, conflicts_with = "no_gamma")]
    pub gamma: f64,

    /// Skip gamma encoding entirely.
    #[arg(long)]
    pub no_gamma: bool,
}

impl PipelineArgs {
    pub fn gamma(&self) -> Option<f64> {
        if self.no_gamma {
            None
        } else {
            Some(self.gamma)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Baseline {
    Mantiuk,
}

#[derive(Debug, Args)]
pub struct TonemapArgs {
    #[command(flatten)]
    pub pipeline: PipelineArgs,

    /// Also write hue-compensated versions of every output.
    #[arg(long)]
    pub compensate: bool,

    /// Output directory (created if missing).
    #[arg(long, value_name = "DIR")]
    pub out: PathBuf,

    /// Input HDR images (.hdr or .pfm).
    #[arg(value_name = "INPUT", required = true)]
    pub inputs: Vec<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CompensateArgs {
    /// The HDR image the LDR image was tone-mapped from.
    #[arg(long, value_name = "FILE")]
    pub hdr: PathBuf,

    /// The tone-mapped LDR image (PNG or PPM).
    #[arg(long, value_name = "FILE")]
    pub ldr: PathBuf,

    /// Output directory (created if missing).
    #[arg(long, value_name = "DIR")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct MetricsArgs {
    /// The HDR reference image.
    #[arg(long, value_name = "FILE")]
    pub hdr: PathBuf,

    /// The LDR candidate image.
    #[arg(long, value_name = "FILE")]
    pub ldr: PathBuf,

    /// Report format.
    #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
    pub format: ReportFormat,

    /// Also write per-pixel difference maps as PNG heatmaps.
    #[arg(long)]
    pub heatmap: bool,

    /// Label for the report's tmo column.
    #[arg(long = "tmo", value_parser = parse_operator)]
    pub tmo: Option<TmOperator>,

    /// Label the candidate as hue-compensated in the report.
    #[arg(long)]
    pub compensate: bool,

    /// Output directory (created if missing).
    #[arg(long, value_name = "DIR")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub pipeline: PipelineArgs,

    /// Include a color-correction baseline alongside conventional/proposed.
    #[arg(long, value_enum)]
    pub baseline: Option<Baseline>,

    /// Report format.
    #[arg(long, value_enum, default_value_t = ReportFormat::Csv)]
    pub format: ReportFormat,

    /// Also write per-pixel difference maps as PNG heatmaps.
    #[arg(long)]
    pub heatmap: bool,

    /// Output directory (created if missing).
    #[arg(long, value_name = "DIR")]
    pub out: PathBuf,

    /// Input HDR images (.hdr or .pfm).
    #[arg(value_name = "INPUT", required = true)]
    pub inputs: Vec<PathBuf>,
}
