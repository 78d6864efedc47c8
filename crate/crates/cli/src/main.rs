//! `qcoh`: coherence measures, level surfaces, channel dynamics and oracle
//! checks for two-qubit Bell-diagonal and X states.
//!
//! Exit status is 0 on success, 1 when `verify` finds a failing suite and 2
//! for invalid or unphysical input.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qcoherence::{ChannelKind, MeasureKind};

#[derive(Debug, Parser)]
#[command(name = "qcoh", version, about)]
struct Cli {
    /// Worker threads for data-parallel stages (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    threads: Option<u16>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print every measure for one state as JSON.
    Measure(StateArgs),
    /// Extract a level surface as OBJ plus JSON statistics.
    Surface(SurfaceArgs),
    /// Relative entropy of coherence against channel strength, as CSV.
    Dynamics(DynamicsArgs),
    /// Run the closed-form versus oracle suites.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct StateArgs {
    #[arg(long, allow_negative_numbers = true)]
    c1: f64,
    #[arg(long, allow_negative_numbers = true)]
    c2: f64,
    #[arg(long, allow_negative_numbers = true)]
    c3: f64,
    /// Bloch component of the first qubit; selects an X state.
    #[arg(long, allow_negative_numbers = true)]
    r: Option<f64>,
    /// Bloch component of the second qubit; selects an X state.
    #[arg(long, allow_negative_numbers = true)]
    s: Option<f64>,
    /// JSON output path (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MeasureArg {
    L1,
    Trace,
    RelEnt,
    Discord,
}

impl From<MeasureArg> for MeasureKind {
    fn from(m: MeasureArg) -> Self {
        match m {
            MeasureArg::L1 => MeasureKind::L1,
            MeasureArg::Trace => MeasureKind::TraceNorm,
            MeasureArg::RelEnt => MeasureKind::RelativeEntropy,
            MeasureArg::Discord => MeasureKind::Discord,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ChannelArg {
    Bf,
    Pf,
    Bpf,
    Gad,
    All,
}

impl ChannelArg {
    fn kinds(self) -> Vec<ChannelKind> {
        match self {
            ChannelArg::Bf => vec![ChannelKind::BitFlip],
            ChannelArg::Pf => vec![ChannelKind::PhaseFlip],
            ChannelArg::Bpf => vec![ChannelKind::BitPhaseFlip],
            ChannelArg::Gad => vec![ChannelKind::GeneralizedAmplitudeDamping],
            ChannelArg::All => ChannelKind::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Args)]
struct SurfaceArgs {
    #[arg(long, value_enum)]
    measure: MeasureArg,
    #[arg(long)]
    level: f64,
    /// Grid nodes per axis.
    #[arg(long, default_value_t = 64)]
    resolution: usize,
    #[arg(long, allow_negative_numbers = true)]
    r: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    s: Option<f64>,
    /// Channel applied to every state before measuring.
    #[arg(long, value_enum, requires = "p")]
    channel: Option<ChannelArg>,
    #[arg(long, requires = "channel")]
    p: Option<f64>,
    /// OBJ mesh path.
    #[arg(long)]
    out: PathBuf,
    /// Statistics JSON path (default: stdout).
    #[arg(long)]
    stats_out: Option<PathBuf>,
    /// Continue the field past the state boundary and cut triangles at the
    /// tetrahedron faces instead of dropping boundary cells.
    #[arg(long)]
    clip: bool,
    /// Keep only triangles where discord equals the relative entropy of
    /// coherence.
    #[arg(long)]
    discord_equality: bool,
}

#[derive(Debug, Args)]
struct DynamicsArgs {
    #[arg(long, allow_negative_numbers = true)]
    c1: f64,
    #[arg(long, allow_negative_numbers = true)]
    c2: f64,
    #[arg(long, allow_negative_numbers = true)]
    c3: f64,
    #[arg(long, value_enum, default_value = "all")]
    channel: ChannelArg,
    /// Number of uniformly spaced p values on [0, 1].
    #[arg(long, default_value_t = qcoherence::channels::DEFAULT_STEPS)]
    steps: usize,
    /// CSV output path (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Random states per sampled suite.
    #[arg(long, default_value_t = qcoherence::verify::DEFAULT_SAMPLES)]
    samples: usize,
    #[arg(long, default_value_t = qcoherence::verify::DEFAULT_SEED)]
    seed: u64,
    /// Flip a sign in the closed form under test; the run must then fail.
    #[arg(long, hide = true)]
    inject_fault: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads(cli.threads) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let outcome = match cli.command {
        Command::Measure(a) => commands::measure(&a),
        Command::Surface(a) => commands::surface(&a),
        Command::Dynamics(a) => commands::dynamics(&a),
        Command::Verify(a) => commands::verify(&a),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

#[cfg(feature = "parallel")]
fn configure_threads(threads: Option<u16>) -> Result<(), String> {
    match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n as usize)
            .build_global()
            .map_err(|e| e.to_string()),
        None => Ok(()),
    }
}

#[cfg(not(feature = "parallel"))]
fn configure_threads(_threads: Option<u16>) -> Result<(), String> {
    Ok(())
}
