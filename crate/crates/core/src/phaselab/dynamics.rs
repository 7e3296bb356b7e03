use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::partition::{decohere_step, matching_step_1d, matching_step_random, ClusterPartition};
use crate::error::{Error, Result};
use crate::trial_rng;

/// Fraction threshold on the median final largest cluster that separates the
/// giant-cluster phase from the fragmented phase.
pub const DEFAULT_THRESHOLD: f64 = 0.01;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Topology {
    /// A fresh uniformly random matching every round.
    Random,
    /// Left and right neighbours on a line, alternately.
    #[serde(rename = "1d")]
    Line,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DynamicsConfig {
    pub n: usize,
    pub steps: usize,
    pub eta: f64,
    pub topology: Topology,
    /// Matching happens on steps `0, nu, 2 nu, ...`; decoherence on every step.
    pub match_every: usize,
}

impl DynamicsConfig {
    pub fn new(n: usize, steps: usize, eta: f64, topology: Topology) -> Self {
        Self {
            n,
            steps,
            eta,
            topology,
            match_every: 1,
        }
    }

    fn check(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidParameter(format!("n = {} is below 2", self.n)));
        }
        if self.steps == 0 {
            return Err(Error::InvalidParameter("steps must be at least 1".into()));
        }
        if !(0.0..=1.0).contains(&self.eta) {
            return Err(Error::InvalidParameter(format!("eta {} outside [0, 1]", self.eta)));
        }
        if self.match_every == 0 {
            return Err(Error::InvalidParameter("match_every must be at least 1".into()));
        }
        Ok(())
    }
}

/// Per-step state after the decoherence of that step.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Trajectory {
    pub max_cluster: Vec<u32>,
    pub num_clusters: Vec<u32>,
}

impl Trajectory {
    pub fn final_max(&self) -> usize {
        self.max_cluster.last().copied().unwrap_or(0) as usize
    }
}

/// Alternates a matching step and a decoherence step.
pub fn run_dynamics<R: Rng + ?Sized>(cfg: &DynamicsConfig, rng: &mut R) -> Result<Trajectory> {
    cfg.check()?;
    let mut p = ClusterPartition::new(cfg.n);
    let mut order = Vec::new();
    let mut mask = Vec::new();
    let mut out = Trajectory {
        max_cluster: Vec::with_capacity(cfg.steps),
        num_clusters: Vec::with_capacity(cfg.steps),
    };
    let mut round = 0usize;
    for t in 0..cfg.steps {
        if t % cfg.match_every == 0 {
            match cfg.topology {
                Topology::Random => matching_step_random(&mut p, &mut order, rng),
                Topology::Line => matching_step_1d(&mut p, round % 2 == 1),
            }
            round += 1;
        }
        decohere_step(&mut p, cfg.eta, &mut mask, rng);
        p.tick();
        out.max_cluster.push(p.max_cluster() as u32);
        out.num_clusters.push(p.num_clusters() as u32);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanConfig {
    pub n: usize,
    pub steps: usize,
    pub grid: Vec<f64>,
    pub trials: usize,
    pub topology: Topology,
    pub match_every: usize,
    pub threshold: f64,
    pub seed: u64,
}

impl ScanConfig {
    pub fn new(topology: Topology, grid: Vec<f64>, seed: u64) -> Self {
        Self {
            n: 2000,
            steps: 200,
            grid,
            trials: 20,
            topology,
            match_every: 1,
            threshold: DEFAULT_THRESHOLD,
            seed,
        }
    }
}

/// `lo, lo + step, ...` up to `hi` inclusive, rounded to absorb float drift.
pub fn eta_grid(lo: f64, hi: f64, step: f64) -> Result<Vec<f64>> {
    if !(0.0..=1.0).contains(&lo) || !(0.0..=1.0).contains(&hi) || lo > hi || !(step > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "bad grid: min {lo}, max {hi}, step {step}"
        )));
    }
    let count = ((hi - lo) / step + 1e-9).floor() as usize;
    Ok((0..=count)
        .map(|k| ((lo + k as f64 * step) * 1e9).round() / 1e9)
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Phase {
    /// A giant cluster survives.
    Supercritical,
    Subcritical,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanPoint {
    pub eta: f64,
    pub median_fraction: f64,
    pub mean_final_max: f64,
    pub mean_final_clusters: f64,
    pub phase: Phase,
    pub trajectories: Vec<Trajectory>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PhaseScanReport {
    pub topology: Topology,
    pub n: usize,
    pub steps: usize,
    pub trials: usize,
    pub match_every: usize,
    pub threshold: f64,
    pub criterion: String,
    pub grid: Vec<f64>,
    pub points: Vec<ScanPoint>,
    /// First grid point whose median final largest-cluster fraction is below the threshold.
    pub eta0: Option<f64>,
    /// Grid spacing near `eta0`.
    pub resolution: Option<f64>,
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_unstable_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        (v[m - 1] + v[m]) / 2.0
    }
}

/// Runs `trials` dynamics per grid point. Trial `j` at grid index `i` uses
/// stream `i * trials + j` of the seed.
pub fn scan_transition(cfg: &ScanConfig) -> Result<PhaseScanReport> {
    if cfg.grid.is_empty() {
        return Err(Error::InvalidParameter("empty eta grid".into()));
    }
    if cfg.grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter("eta grid must be strictly increasing".into()));
    }
    if cfg.trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    let base = DynamicsConfig {
        n: cfg.n,
        steps: cfg.steps,
        eta: 0.0,
        topology: cfg.topology,
        match_every: cfg.match_every,
    };
    for &eta in &cfg.grid {
        DynamicsConfig { eta, ..base }.check()?;
    }
    let jobs: Vec<(usize, usize)> = (0..cfg.grid.len())
        .flat_map(|i| (0..cfg.trials).map(move |j| (i, j)))
        .collect();
    let runs: Vec<Trajectory> = jobs
        .par_iter()
        .map(|&(i, j)| {
            let mut rng = trial_rng(cfg.seed, (i * cfg.trials + j) as u64);
            run_dynamics(&DynamicsConfig { eta: cfg.grid[i], ..base }, &mut rng)
        })
        .collect::<Result<_>>()?;

    let mut runs = runs.into_iter();
    let n = cfg.n as f64;
    let points: Vec<ScanPoint> = cfg
        .grid
        .iter()
        .map(|&eta| {
            let trajectories: Vec<Trajectory> = runs.by_ref().take(cfg.trials).collect();
            let fractions: Vec<f64> = trajectories.iter().map(|t| t.final_max() as f64 / n).collect();
            let k = trajectories.len() as f64;
            let median_fraction = median(fractions);
            ScanPoint {
                eta,
                median_fraction,
                mean_final_max: trajectories.iter().map(|t| t.final_max() as f64).sum::<f64>() / k,
                mean_final_clusters: trajectories
                    .iter()
                    .map(|t| t.num_clusters.last().copied().unwrap_or(0) as f64)
                    .sum::<f64>()
                    / k,
                phase: if median_fraction < cfg.threshold {
                    Phase::Subcritical
                } else {
                    Phase::Supercritical
                },
                trajectories,
            }
        })
        .collect();

    let first = points.iter().position(|p| p.phase == Phase::Subcritical);
    let eta0 = first.map(|i| points[i].eta);
    let resolution = first.and_then(|i| {
        let g = &cfg.grid;
        if g.len() < 2 {
            None
        } else if i == 0 {
            Some(g[1] - g[0])
        } else {
            Some(g[i] - g[i - 1])
        }
    });
    Ok(PhaseScanReport {
        topology: cfg.topology,
        n: cfg.n,
        steps: cfg.steps,
        trials: cfg.trials,
        match_every: cfg.match_every,
        threshold: cfg.threshold,
        criterion: format!(
            "first eta whose median final largest-cluster fraction is below {}",
            cfg.threshold
        ),
        grid: cfg.grid.clone(),
        points,
        eta0,
        resolution,
    })
}
