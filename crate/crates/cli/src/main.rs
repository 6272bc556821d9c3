//! `sfh` — syndrome fuzzy hashing with LDPC codes.
//!
//! Subcommands cover the full workflow: ensemble inspection, density-
//! evolution thresholds, PEG code construction, BSC Monte Carlo simulation,
//! template enrollment/verification, entropy analysis, and synthetic
//! template generation.
//!
//! Exit codes: 0 success (or access granted), 1 access denied, 2 error.

mod commands;
mod config;

use clap::{Parser, Subcommand};
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "sfh", version, about = "Syndrome fuzzy hashing with LDPC codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Feasibility, row-weight profile and degree distributions of an
    /// almost-regular ensemble.
    Ensemble(EnsembleArgs),
    /// Decoding thresholds over a rate/column-weight grid, as CSV.
    Threshold(ThresholdArgs),
    /// Progressive Edge Growth code construction; writes alist + metadata.
    Construct(ConstructArgs),
    /// Monte Carlo BER/FER simulation over the BSC, as CSV.
    Simulate(SimulateArgs),
    /// Enroll a template, producing an enrollment record.
    Enroll(EnrollArgs),
    /// Verify a probe against an enrollment record (exit 0 = granted,
    /// 1 = denied).
    Verify(VerifyArgs),
    /// Distance statistics, DOF and histograms of a template set.
    Analyze(AnalyzeArgs),
    /// Generate a synthetic template set.
    Synth(SynthArgs),
}

#[derive(clap::Args)]
struct EnsembleArgs {
    /// Design rate R (alternative to --n/--k)
    #[arg(long)]
    rate: Option<f64>,
    /// Code length (with --k)
    #[arg(long)]
    n: Option<usize>,
    /// Information length (with --n)
    #[arg(long)]
    k: Option<usize>,
    /// Column weight
    #[arg(long)]
    dv: Option<usize>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(clap::Args)]
struct ThresholdArgs {
    /// Comma-separated rates (default: the published 0.10..0.01 grid)
    #[arg(long, value_delimiter = ',')]
    rates: Option<Vec<f64>>,
    /// Comma-separated column weights (default: 3,4,5)
    #[arg(long, value_delimiter = ',')]
    dvs: Option<Vec<usize>>,
    /// Bisection precision
    #[arg(long)]
    precision: Option<f64>,
    /// Output CSV path (stdout when absent)
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(clap::Args)]
struct ConstructArgs {
    #[arg(long)]
    n: Option<usize>,
    /// Information length (alternative to --r)
    #[arg(long)]
    k: Option<usize>,
    /// Parity-check rows (alternative to --k)
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    dv: Option<usize>,
    /// Constrain the right r x r block to lower-triangular form
    #[arg(long)]
    triangular: bool,
    #[arg(long)]
    seed: Option<u64>,
    /// Output alist path; a `.meta` sidecar is written next to it
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(clap::Args)]
struct SimulateArgs {
    /// Code to simulate (alist file)
    #[arg(long)]
    code: PathBuf,
    /// Comma-separated crossover probabilities
    #[arg(long, value_delimiter = ',')]
    p_grid: Option<Vec<f64>>,
    /// Frames per grid point
    #[arg(long)]
    frames: Option<usize>,
    /// Decoder: spa, gallager-a or gallager-b
    #[arg(long)]
    variant: Option<String>,
    #[arg(long)]
    max_iter: Option<usize>,
    /// Fixed SPA design crossover (default: each grid point's p)
    #[arg(long)]
    channel_p: Option<f64>,
    /// Stop a point early after this many frame errors
    #[arg(long)]
    min_frame_errors: Option<usize>,
    /// Transmit random codewords instead of the all-zero codeword
    #[arg(long)]
    random_codewords: bool,
    #[arg(long)]
    seed: Option<u64>,
    /// Output CSV path (stdout when absent)
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(clap::Args)]
struct EnrollArgs {
    #[arg(long)]
    code: PathBuf,
    /// Template set file (FTPL1)
    #[arg(long)]
    template: PathBuf,
    /// Index of the template within the set
    #[arg(long, default_value_t = 0)]
    index: usize,
    /// syndrome-fuzzy-hash or fuzzy-commitment
    #[arg(long)]
    scheme: Option<String>,
    /// Codeword seed (fuzzy commitment only)
    #[arg(long)]
    seed: Option<u64>,
    /// Output record path
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(clap::Args)]
struct VerifyArgs {
    #[arg(long)]
    code: PathBuf,
    /// Enrollment record path
    #[arg(long)]
    record: PathBuf,
    /// Probe template set file (FTPL1)
    #[arg(long)]
    probe: PathBuf,
    /// Index of the probe within the set
    #[arg(long, default_value_t = 0)]
    index: usize,
    #[arg(long)]
    variant: Option<String>,
    #[arg(long)]
    max_iter: Option<usize>,
    /// SPA design crossover probability
    #[arg(long)]
    channel_p: Option<f64>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(clap::Args)]
struct AnalyzeArgs {
    /// Template set file (FTPL1)
    #[arg(long)]
    templates: PathBuf,
    /// Labels file (one subject id per line)
    #[arg(long)]
    labels: PathBuf,
    /// Mask file (FTPL1 layout, 1 = erased)
    #[arg(long)]
    masks: Option<PathBuf>,
    /// inter (default) or intra
    #[arg(long)]
    mode: Option<String>,
    /// Apply a pseudomask derived from --masks
    #[arg(long)]
    pseudomask: bool,
    /// Pseudomask erase-frequency threshold
    #[arg(long)]
    mth: Option<f64>,
    /// Also report DOF of the syndrome set under this code
    #[arg(long)]
    code: Option<PathBuf>,
    /// DOF report CSV path (stdout when absent)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Distance histogram CSV path
    #[arg(long)]
    hist_out: Option<PathBuf>,
    /// Histogram bin count
    #[arg(long)]
    bins: Option<usize>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(clap::Args)]
struct SynthArgs {
    #[arg(long)]
    subjects: Option<usize>,
    #[arg(long)]
    readings: Option<usize>,
    #[arg(long)]
    length: Option<usize>,
    /// Intra-class flip probability
    #[arg(long)]
    intra_p: Option<f64>,
    /// Base-template correlation block length (1 = independent bits)
    #[arg(long)]
    block_len: Option<usize>,
    /// Per-position mask erase probability (omit for no masks)
    #[arg(long)]
    mask_p: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output prefix: writes <prefix>.ftpl, <prefix>.labels,
    /// optionally <prefix>.mask, plus <prefix>.meta
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    config: Option<PathBuf>,
}

fn main() {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Ensemble(args) => commands::ensemble(args),
        Command::Threshold(args) => commands::threshold(args),
        Command::Construct(args) => commands::construct(args),
        Command::Simulate(args) => commands::simulate(args),
        Command::Enroll(args) => commands::enroll(args),
        Command::Verify(args) => commands::verify(args),
        Command::Analyze(args) => commands::analyze(args),
        Command::Synth(args) => commands::synth(args),
    };
    let code = match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            2
        }
    };
    std::process::exit(code);
}
