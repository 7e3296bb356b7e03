use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::trial::{run_trial_prepared, StepStats, TrialOptions, DEFAULT_CLUSTER_CAP};
use crate::error::{Error, Result};
use crate::medium::{FaultSpec, Medium};
use crate::trial_rng;

/// Renders bits as a `0`/`1` string.
pub fn bit_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SamplingOptions {
    pub cluster_cap: usize,
    /// Keep per-step statistics for the first this-many trials.
    pub keep_traces: usize,
}

impl Default for SamplingOptions {
    fn default() -> Self {
        Self {
            cluster_cap: DEFAULT_CLUSTER_CAP,
            keep_traces: 0,
        }
    }
}

/// Cost aggregates over all completed trials.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct CostSummary {
    pub mean_entries: f64,
    /// Trials by their largest cluster size.
    pub max_cluster_histogram: BTreeMap<usize, u64>,
    /// `(trial, step)` pairs by the value of `K(t)`.
    pub k_histogram: BTreeMap<usize, u64>,
    /// Qubit-steps by the size of the qubit's cluster.
    pub cluster_size_samples: BTreeMap<usize, u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct SampleReport {
    pub trials: u64,
    /// Trials abandoned because a cluster would exceed the cap.
    pub capped_trials: u64,
    pub counts: BTreeMap<String, u64>,
    /// Frequencies over completed trials.
    pub distribution: BTreeMap<String, f64>,
    pub summary: CostSummary,
    /// Per-trial step statistics, keyed by trial index.
    pub traces: Vec<(u64, Vec<StepStats>)>,
}

struct TrialRecord {
    output: String,
    entries: u64,
    peak: usize,
    ks: Vec<usize>,
    sizes: BTreeMap<usize, u64>,
    trace: Option<Vec<StepStats>>,
}

const BLOCK: u64 = 4096;

/// Runs `trials` independent trials. Trial `i` draws from `trial_rng(seed, i)`,
/// so the report depends only on the arguments, not on thread scheduling.
/// Trials that hit the cluster cap are counted and left out of the
/// distribution; any other failure aborts the run.
pub fn sample_output_distribution(
    medium: &Medium,
    fault: &FaultSpec,
    input: &[bool],
    trials: u64,
    seed: u64,
    options: SamplingOptions,
) -> Result<SampleReport> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    medium.check()?;
    medium.check_input(input)?;
    let schedule = medium.schedule();
    let trial_options = TrialOptions {
        cluster_cap: options.cluster_cap,
    };

    let mut report = SampleReport {
        trials,
        ..Default::default()
    };
    let mut entries_total = 0u128;
    let mut start = 0;
    while start < trials {
        let end = (start + BLOCK).min(trials);
        let block: Vec<Result<Option<TrialRecord>>> = (start..end)
            .into_par_iter()
            .map(|i| {
                let mut rng = trial_rng(seed, i);
                match run_trial_prepared(medium, &schedule, fault, input, &mut rng, trial_options) {
                    Ok((bits, stats)) => Ok(Some(TrialRecord {
                        output: bit_string(&bits),
                        entries: stats.entries_written,
                        peak: stats.peak_cluster,
                        ks: stats.steps.iter().map(|s| s.k).collect(),
                        sizes: stats.cluster_size_samples,
                        trace: ((i as usize) < options.keep_traces).then_some(stats.steps),
                    })),
                    Err(Error::ClusterCapExceeded { .. }) => Ok(None),
                    Err(e) => Err(e),
                }
            })
            .collect();
        for (i, rec) in (start..end).zip(block) {
            let Some(rec) = rec? else {
                report.capped_trials += 1;
                continue;
            };
            *report.counts.entry(rec.output).or_default() += 1;
            entries_total += u128::from(rec.entries);
            let s = &mut report.summary;
            *s.max_cluster_histogram.entry(rec.peak).or_default() += 1;
            for k in rec.ks {
                *s.k_histogram.entry(k).or_default() += 1;
            }
            for (size, c) in rec.sizes {
                *s.cluster_size_samples.entry(size).or_default() += c;
            }
            if let Some(trace) = rec.trace {
                report.traces.push((i, trace));
            }
        }
        start = end;
    }

    let completed = trials - report.capped_trials;
    if completed > 0 {
        report.summary.mean_entries = entries_total as f64 / completed as f64;
        report.distribution = report
            .counts
            .iter()
            .map(|(k, &c)| (k.clone(), c as f64 / completed as f64))
            .collect();
    }
    Ok(report)
}
