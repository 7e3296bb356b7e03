use std::collections::BTreeMap;

use serde::Serialize;

use decosim_core::clustersim::{sample_output_distribution, SampleReport, SamplingOptions};
use decosim_core::medium::{CircuitDocument, FaultSpec, Medium};
use decosim_core::oracle::{total_variation, FaultChannel, Oracle};
use decosim_core::phaselab::{
    branching_tail_check, eta_grid, scan_transition, BranchingConfig, Phase, ScanConfig, Topology,
};
use decosim_core::qmath::{ComplexMatrix, Observable};
use decosim_core::Error;

use crate::output::OutputDir;
use crate::{
    BranchingArgs, CircuitArgs, Cli, Command, CompareArgs, OracleArgs, OracleMode, PhaseScanArgs, SimulateArgs,
};

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }

    fn resource(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    fn failed(message: impl Into<String>) -> Self {
        Self {
            code: 3,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::ClusterCapExceeded { .. } => CliError::resource(e.to_string()),
            other => CliError::usage(other.to_string()),
        }
    }
}

type Outcome = Result<(), CliError>;

pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Simulate(a) => simulate(a, cli.seed),
        Command::Oracle(a) => oracle(a, cli.seed),
        Command::Compare(a) => compare(a, cli.seed),
        Command::PhaseScan(a) => phase_scan(a, cli.seed),
        Command::BranchingCheck(a) => branching(a, cli.seed),
    }
}

struct Problem {
    medium: Medium,
    fault: FaultSpec,
    input: Vec<bool>,
}

fn parse_fault(text: &str) -> Result<FaultSpec, CliError> {
    match text.to_ascii_lowercase().as_str() {
        "z" => return Ok(FaultSpec::z()),
        "x" => return Ok(FaultSpec::x()),
        _ => {}
    }
    let raw = std::fs::read_to_string(text).map_err(|e| CliError::usage(format!("fault file {text}: {e}")))?;
    let m: ComplexMatrix =
        serde_json::from_str(&raw).map_err(|e| CliError::usage(format!("fault file {text}: {e}")))?;
    let obs = Observable::new(m).map_err(|e| CliError::usage(format!("fault file {text}: {e}")))?;
    FaultSpec::new(obs).map_err(|e| CliError::usage(format!("fault file {text}: {e}")))
}

fn parse_bits(text: &str) -> Result<Vec<bool>, CliError> {
    text.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(CliError::usage(format!("input bits must be 0 or 1, got {c:?}"))),
        })
        .collect()
}

fn load(args: &CircuitArgs) -> Result<Problem, CliError> {
    let doc = CircuitDocument::load(&args.circuit)?;
    let fault = match &args.fault {
        Some(f) => parse_fault(f)?,
        None => doc.fault,
    };
    let mut medium = doc.medium;
    if let Some(eta) = args.eta_override {
        medium.eta = eta;
    }
    medium.check()?;
    let input = match &args.input {
        Some(bits) => parse_bits(bits)?,
        None => vec![false; medium.n],
    };
    if input.len() != medium.n {
        return Err(CliError::usage(format!(
            "input has {} bits, the circuit has {} qubits",
            input.len(),
            medium.n
        )));
    }
    Ok(Problem { medium, fault, input })
}

fn print_distribution(d: &BTreeMap<String, f64>) {
    for (k, p) in d {
        println!("{k}\t{p}");
    }
}

#[derive(Serialize)]
struct SimulationSummary<'a> {
    trials: u64,
    capped_trials: u64,
    cluster_cap: usize,
    distribution: &'a BTreeMap<String, f64>,
    counts: &'a BTreeMap<String, u64>,
    mean_entries: f64,
    max_cluster_histogram: &'a BTreeMap<usize, u64>,
    k_histogram: &'a BTreeMap<usize, u64>,
    cluster_size_samples: &'a BTreeMap<usize, u64>,
}

fn sample(p: &Problem, trials: u64, seed: u64, cluster_cap: usize, keep_traces: usize) -> Result<SampleReport, CliError> {
    if trials == 0 {
        return Err(CliError::usage("--trials must be at least 1"));
    }
    let opts = SamplingOptions {
        cluster_cap,
        keep_traces,
    };
    Ok(sample_output_distribution(&p.medium, &p.fault, &p.input, trials, seed, opts)?)
}

fn capped(report: &SampleReport, cap: usize) -> Outcome {
    if report.capped_trials > 0 {
        return Err(CliError::resource(format!(
            "{} of {} trials exceeded the cluster cap of {cap}; statistics cover the rest",
            report.capped_trials, report.trials
        )));
    }
    Ok(())
}

fn simulate(a: &SimulateArgs, seed: u64) -> Outcome {
    let p = load(&a.circuit)?;
    let mut out = OutputDir::new(a.out.as_deref())?;
    let r = sample(&p, a.trials, seed, a.cluster_cap, a.csv_trials)?;
    print_distribution(&r.distribution);
    println!("mean entries written: {}", r.summary.mean_entries);
    out.json(
        "summary.json",
        &SimulationSummary {
            trials: r.trials,
            capped_trials: r.capped_trials,
            cluster_cap: a.cluster_cap,
            distribution: &r.distribution,
            counts: &r.counts,
            mean_entries: r.summary.mean_entries,
            max_cluster_histogram: &r.summary.max_cluster_histogram,
            k_histogram: &r.summary.k_histogram,
            cluster_size_samples: &r.summary.cluster_size_samples,
        },
    )?;
    out.csv(
        "cost.csv",
        &["trial", "t", "K", "K_star", "max_cluster", "entries_written"],
        r.traces.iter().flat_map(|(trial, steps)| {
            steps.iter().map(move |s| {
                vec![
                    trial.to_string(),
                    s.t.to_string(),
                    s.k.to_string(),
                    s.k_star.to_string(),
                    s.max_cluster.to_string(),
                    s.entries_written.to_string(),
                ]
            })
        }),
    )?;
    out.manifest("simulate", a, seed)?;
    capped(&r, a.cluster_cap)
}

fn exact(p: &Problem, mode: OracleMode, dense_cap: usize) -> Result<BTreeMap<String, f64>, CliError> {
    let o = Oracle {
        dense_cap,
        ..Default::default()
    };
    let channel = FaultChannel::from(&p.fault);
    Ok(match mode {
        OracleMode::Exact => o.output_distribution_exact(&p.medium, &channel, &p.input)?,
        OracleMode::Pathsum => o
            .path_sum_exact(&p.medium, &channel, &p.input)?
            .readout_distribution(&p.medium.result_qubits)?,
    })
}

fn oracle(a: &OracleArgs, seed: u64) -> Outcome {
    let p = load(&a.circuit)?;
    let mut out = OutputDir::new(a.out.as_deref())?;
    let d = exact(&p, a.mode, a.dense_cap)?;
    print_distribution(&d);
    out.json("distribution.json", &d)?;
    out.manifest("oracle", a, seed)
}

#[derive(Serialize)]
struct Comparison<'a> {
    tv_distance: f64,
    tolerance: f64,
    passed: bool,
    trials: u64,
    capped_trials: u64,
    exact: &'a BTreeMap<String, f64>,
    sampled: &'a BTreeMap<String, f64>,
}

fn compare(a: &CompareArgs, seed: u64) -> Outcome {
    let p = load(&a.circuit)?;
    let mut out = OutputDir::new(a.out.as_deref())?;
    let exact = exact(&p, OracleMode::Exact, a.dense_cap)?;
    let r = sample(&p, a.trials, seed, a.cluster_cap, 0)?;
    let tv = total_variation(&exact, &r.distribution);
    let passed = tv <= a.tolerance;
    println!("total variation distance: {tv} (tolerance {})", a.tolerance);
    out.json(
        "comparison.json",
        &Comparison {
            tv_distance: tv,
            tolerance: a.tolerance,
            passed,
            trials: r.trials,
            capped_trials: r.capped_trials,
            exact: &exact,
            sampled: &r.distribution,
        },
    )?;
    out.manifest("compare", a, seed)?;
    capped(&r, a.cluster_cap)?;
    if passed {
        Ok(())
    } else {
        Err(CliError::failed(format!("distance {tv} exceeds tolerance {}", a.tolerance)))
    }
}

#[derive(Serialize)]
struct PointSummary {
    eta: f64,
    median_fraction: f64,
    mean_final_max: f64,
    mean_final_clusters: f64,
    phase: Phase,
}

#[derive(Serialize)]
struct ScanSummary {
    topology: Topology,
    n: usize,
    steps: usize,
    trials: usize,
    match_every: usize,
    criterion: String,
    threshold: f64,
    eta0: Option<f64>,
    resolution: Option<f64>,
    /// Decoherence rate at which the one-step mean-field growth factor of a
    /// small cluster drops to one; reported for comparison only.
    mean_field_rate: f64,
    points: Vec<PointSummary>,
}

fn phase_scan(a: &PhaseScanArgs, seed: u64) -> Outcome {
    let topology = Topology::from(a.topology);
    let (lo, hi) = match topology {
        Topology::Random => (0.50, 0.80),
        Topology::Line => (0.35, 0.65),
    };
    let grid = eta_grid(a.eta_min.unwrap_or(lo), a.eta_max.unwrap_or(hi), a.eta_step)?;
    let mut out = OutputDir::new(a.out.as_deref())?;
    let cfg = ScanConfig {
        n: a.n,
        steps: a.steps,
        grid,
        trials: a.trials,
        topology,
        match_every: a.match_every,
        threshold: a.threshold,
        seed,
    };
    let r = scan_transition(&cfg)?;
    for pt in &r.points {
        println!("eta {:.4}\tmedian fraction {:.5}", pt.eta, pt.median_fraction);
    }
    match r.eta0 {
        Some(e) => println!("eta0 = {e}"),
        None => println!("eta0 not found: the giant cluster persists across the grid"),
    }
    out.csv(
        "scan.csv",
        &["eta", "trial", "t", "max_cluster", "n_clusters"],
        r.points.iter().flat_map(|pt| {
            pt.trajectories.iter().enumerate().flat_map(move |(trial, tr)| {
                tr.max_cluster
                    .iter()
                    .zip(&tr.num_clusters)
                    .enumerate()
                    .map(move |(t, (m, c))| {
                        vec![
                            pt.eta.to_string(),
                            trial.to_string(),
                            t.to_string(),
                            m.to_string(),
                            c.to_string(),
                        ]
                    })
            })
        }),
    )?;
    out.json(
        "summary.json",
        &ScanSummary {
            topology,
            n: r.n,
            steps: r.steps,
            trials: r.trials,
            match_every: r.match_every,
            criterion: r.criterion.clone(),
            threshold: r.threshold,
            eta0: r.eta0,
            resolution: r.resolution,
            mean_field_rate: 0.5,
            points: r
                .points
                .iter()
                .map(|pt| PointSummary {
                    eta: pt.eta,
                    median_fraction: pt.median_fraction,
                    mean_final_max: pt.mean_final_max,
                    mean_final_clusters: pt.mean_final_clusters,
                    phase: pt.phase,
                })
                .collect(),
        },
    )?;
    out.manifest("phase-scan", a, seed)
}

fn branching(a: &BranchingArgs, seed: u64) -> Outcome {
    let cfg = BranchingConfig {
        tree_cap: a.tree_cap,
        ..BranchingConfig::geometric(a.a)
    };
    let mut out = OutputDir::new(a.out.as_deref())?;
    let r = branching_tail_check(&cfg, a.samples, seed)?;
    for row in &r.rows {
        println!(
            "L={}\tcount {}\tfrequency {:.3e}\tbound {:.3e}{}",
            row.i,
            row.count,
            row.empirical,
            row.bound,
            if row.violated { "\tVIOLATED" } else { "" }
        );
    }
    println!("overflow: {}, violations: {}", r.overflow, r.violations);
    out.json("branching.json", &r)?;
    out.manifest("branching-check", a, seed)?;
    if r.violations > 0 {
        return Err(CliError::failed(format!("{} tail values exceed the bound", r.violations)));
    }
    Ok(())
}
