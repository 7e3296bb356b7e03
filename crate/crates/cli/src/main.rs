mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use decosim_core::clustersim::DEFAULT_CLUSTER_CAP;
use decosim_core::oracle::DEFAULT_DENSE_CAP;
use decosim_core::phaselab::{Topology, DEFAULT_THRESHOLD};

const EXIT_CODES: &str = "\
Exit codes:
  0  success
  1  usage or input error (bad flags, unreadable or malformed files,
     circuit above the dense cap or with too many fault sites)
  2  resource exhaustion (a trial hit the cluster cap)
  3  check failed (distance above tolerance, bound violated)";

#[derive(Parser, Debug)]
#[command(name = "decosim", version, about = "Simulate quantum circuits under collapse faults", after_help = EXIT_CODES)]
struct Cli {
    /// Seed for every random choice of the run.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Worker threads (default: available parallelism). Results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample output strings with the cluster simulator.
    Simulate(SimulateArgs),
    /// Exact output distribution from dense evolution.
    Oracle(OracleArgs),
    /// Sample with the cluster simulator and measure the distance to the exact distribution.
    Compare(CompareArgs),
    /// Locate the giant-cluster transition of the abstract cluster dynamics.
    PhaseScan(PhaseScanArgs),
    /// Compare branching-process tail frequencies against the closed-form bound.
    BranchingCheck(BranchingArgs),
}

#[derive(Args, Debug, Serialize)]
struct CircuitArgs {
    /// Circuit JSON file.
    #[arg(long)]
    circuit: PathBuf,

    /// Fault basis: `z`, `x`, or a JSON file holding a 2x2 hermitian matrix.
    /// Defaults to the circuit's own fault observable.
    #[arg(long)]
    fault: Option<String>,

    /// Input bits, one per qubit (default: all zeros).
    #[arg(long)]
    input: Option<String>,

    /// Replace the circuit's decoherence rate.
    #[arg(long)]
    eta_override: Option<f64>,
}

#[derive(Args, Debug, Serialize)]
struct SimulateArgs {
    #[command(flatten)]
    circuit: CircuitArgs,

    #[arg(long, default_value_t = 100_000)]
    trials: u64,

    /// Largest cluster a trial may build.
    #[arg(long, default_value_t = DEFAULT_CLUSTER_CAP)]
    cluster_cap: usize,

    /// Trials whose per-step costs go to the CSV file.
    #[arg(long, default_value_t = 100)]
    csv_trials: usize,

    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum OracleMode {
    /// Weak-fault superoperator evolution.
    Exact,
    /// Weighted sum over all fault paths.
    Pathsum,
}

#[derive(Args, Debug, Serialize)]
struct OracleArgs {
    #[command(flatten)]
    circuit: CircuitArgs,

    #[arg(long, value_enum, default_value_t = OracleMode::Exact)]
    mode: OracleMode,

    /// Largest circuit, in qubits, evolved densely.
    #[arg(long, default_value_t = DEFAULT_DENSE_CAP)]
    dense_cap: usize,

    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
struct CompareArgs {
    #[command(flatten)]
    circuit: CircuitArgs,

    #[arg(long, default_value_t = 100_000)]
    trials: u64,

    /// Largest accepted total variation distance.
    #[arg(long, default_value_t = 0.01)]
    tolerance: f64,

    #[arg(long, default_value_t = DEFAULT_CLUSTER_CAP)]
    cluster_cap: usize,

    #[arg(long, default_value_t = DEFAULT_DENSE_CAP)]
    dense_cap: usize,

    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum TopologyArg {
    Random,
    #[value(name = "1d")]
    #[serde(rename = "1d")]
    Line,
}

impl From<TopologyArg> for Topology {
    fn from(t: TopologyArg) -> Self {
        match t {
            TopologyArg::Random => Topology::Random,
            TopologyArg::Line => Topology::Line,
        }
    }
}

#[derive(Args, Debug, Serialize)]
struct PhaseScanArgs {
    #[arg(long, value_enum, default_value_t = TopologyArg::Random)]
    topology: TopologyArg,

    #[arg(long, default_value_t = 2000)]
    n: usize,

    #[arg(long, default_value_t = 200)]
    steps: usize,

    /// Grid start (default 0.50 for random, 0.35 for 1d).
    #[arg(long)]
    eta_min: Option<f64>,

    /// Grid end (default 0.80 for random, 0.65 for 1d).
    #[arg(long)]
    eta_max: Option<f64>,

    #[arg(long, default_value_t = 0.01)]
    eta_step: f64,

    /// Trials per grid point.
    #[arg(long, default_value_t = 20)]
    trials: usize,

    /// Steps between matchings.
    #[arg(long, default_value_t = 1)]
    match_every: usize,

    /// Largest-cluster fraction separating the phases.
    #[arg(long, default_value_t = DEFAULT_THRESHOLD)]
    threshold: f64,

    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
struct BranchingArgs {
    /// Tail base; must exceed 8.
    #[arg(long, default_value_t = 30.0)]
    a: f64,

    #[arg(long, default_value_t = 1_000_000)]
    samples: u64,

    /// Trees larger than this count as overflow.
    #[arg(long, default_value_t = 1 << 20)]
    tree_cap: usize,

    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(1);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
