use std::borrow::Cow;
use std::collections::BTreeMap;

use rand::Rng;
use serde::Serialize;

use super::configuration::Configuration;
use super::outcome::{OutcomeChooser, RngChooser};
use crate::error::{Error, Result};
use crate::medium::{sample_fault_path, FaultPath, FaultSpec, Medium, Schedule};
use crate::qmath::Observable;

/// Largest cluster a trial may build before it is abandoned as infeasible.
pub const DEFAULT_CLUSTER_CAP: usize = 13;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrialOptions {
    pub cluster_cap: usize,
}

impl Default for TrialOptions {
    fn default() -> Self {
        Self {
            cluster_cap: DEFAULT_CLUSTER_CAP,
        }
    }
}

/// Cluster statistics of one step.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct StepStats {
    pub t: usize,
    /// Non-individual qubits after the gates of the step.
    pub k_star: usize,
    /// Non-individual qubits after the collapses of the step.
    pub k: usize,
    /// Largest cluster seen during the step.
    pub max_cluster: usize,
    /// Cumulative matrix entries written up to and including this step.
    pub entries_written: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct CostStats {
    pub steps: Vec<StepStats>,
    /// Sum over steps of `4^k` over the clusters present after the gates.
    pub entries_written: u64,
    pub peak_cluster: usize,
    /// For every step and live qubit, the size of the qubit's cluster after
    /// the collapses, as a histogram size -> count.
    pub cluster_size_samples: BTreeMap<usize, u64>,
}

impl CostStats {
    /// Largest non-individual count `max_t K*(t)`.
    pub fn peak_k_star(&self) -> usize {
        self.steps.iter().map(|s| s.k_star).max().unwrap_or(0)
    }
}

/// Step-by-step driver of one trial, for callers that want to inspect the
/// configuration between steps.
pub struct TrialRunner<'a> {
    medium: &'a Medium,
    fault: &'a Observable,
    schedule: Cow<'a, Schedule>,
    input: Vec<bool>,
    conf: Configuration,
    next_step: usize,
    stats: CostStats,
    options: TrialOptions,
}

impl<'a> TrialRunner<'a> {
    pub fn new(medium: &'a Medium, fault: &'a FaultSpec, input: &[bool], options: TrialOptions) -> Result<Self> {
        medium.check()?;
        medium.check_input(input)?;
        Ok(Self::prepared(medium, Cow::Owned(medium.schedule()), fault, input, options))
    }

    /// For callers that validated the medium and input and built its schedule.
    pub(crate) fn prepared(
        medium: &'a Medium,
        schedule: Cow<'a, Schedule>,
        fault: &'a FaultSpec,
        input: &[bool],
        options: TrialOptions,
    ) -> Self {
        let mut conf = Configuration::new();
        for &q in &schedule.initial {
            conf.insert(q, input[q]).expect("initial qubits are distinct");
        }
        Self {
            medium,
            fault: &fault.observable,
            schedule,
            input: input.to_vec(),
            conf,
            next_step: 0,
            stats: CostStats::default(),
            options,
        }
    }

    pub fn configuration(&self) -> &Configuration {
        &self.conf
    }

    /// Index of the step that [`step`](Self::step) will run next.
    pub fn next_step(&self) -> usize {
        self.next_step
    }

    pub fn is_done(&self) -> bool {
        self.next_step >= self.schedule.steps.len()
    }

    /// Runs one step: deaths, births, gates, then a collapse on each qubit in
    /// `faulty` (in the given order).
    pub fn step(&mut self, faulty: &[usize], chooser: &mut dyn OutcomeChooser) -> Result<StepStats> {
        let t = self.next_step;
        let plan = self
            .schedule
            .steps
            .get(t)
            .ok_or_else(|| Error::InvalidParameter(format!("step {t} is past the horizon")))?;
        for &q in &plan.deaths {
            self.conf.remove(q)?;
        }
        for &q in &plan.births {
            self.conf.insert(q, self.input[q])?;
        }
        for &gi in &plan.gates {
            self.conf.apply_gate(&self.medium.gates[gi], self.options.cluster_cap)?;
        }
        let k_star = self.conf.non_individual();
        let mut max_cluster = self.conf.max_cluster();
        self.stats.entries_written += self.conf.entries();

        for &q in faulty {
            if plan.live.binary_search(&q).is_err() {
                return Err(Error::InvalidFaultPath(format!("qubit {q} is not live at step {t}")));
            }
            self.conf.apply_collapse(q, self.fault, chooser)?;
        }
        let k = self.conf.non_individual();
        max_cluster = max_cluster.max(self.conf.max_cluster());
        for c in self.conf.clusters() {
            *self.stats.cluster_size_samples.entry(c.len()).or_default() += c.len() as u64;
        }
        self.stats.peak_cluster = self.stats.peak_cluster.max(max_cluster);
        let s = StepStats {
            t,
            k_star,
            k,
            max_cluster,
            entries_written: self.stats.entries_written,
        };
        self.stats.steps.push(s);
        self.next_step += 1;
        Ok(s)
    }

    /// Reads out the result qubits in the computational basis, in the order
    /// they are listed. Remaining steps must already have been run.
    pub fn finish(mut self, chooser: &mut dyn OutcomeChooser) -> Result<(Vec<bool>, CostStats)> {
        if !self.is_done() {
            return Err(Error::InvalidParameter(format!(
                "{} steps left before readout",
                self.schedule.steps.len() - self.next_step
            )));
        }
        let basic = Observable::basic();
        let mut bits = Vec::with_capacity(self.medium.result_qubits.len());
        for &q in &self.medium.result_qubits {
            bits.push(self.conf.apply_collapse(q, &basic, chooser)? == 1);
        }
        Ok((bits, self.stats))
    }
}

/// One trial along a fixed fault path with outcomes from `chooser`.
pub fn run_with_path(
    medium: &Medium,
    fault: &FaultSpec,
    input: &[bool],
    path: &FaultPath,
    chooser: &mut dyn OutcomeChooser,
    options: TrialOptions,
) -> Result<(Vec<bool>, CostStats)> {
    path.check_against(medium)?;
    drive(TrialRunner::new(medium, fault, input, options)?, path, chooser)
}

fn drive(
    mut runner: TrialRunner<'_>,
    path: &FaultPath,
    chooser: &mut dyn OutcomeChooser,
) -> Result<(Vec<bool>, CostStats)> {
    let mut faulty = Vec::new();
    while !runner.is_done() {
        faulty.clear();
        faulty.extend(path.at_time(runner.next_step()).iter().map(|e| e.qubit));
        runner.step(&faulty, chooser)?;
    }
    runner.finish(chooser)
}

/// One Monte Carlo trial: draws a fault path, runs it, reads out.
pub fn run_trial<R: Rng + ?Sized>(
    medium: &Medium,
    fault: &FaultSpec,
    input: &[bool],
    rng: &mut R,
    options: TrialOptions,
) -> Result<(Vec<bool>, CostStats)> {
    let runner = TrialRunner::new(medium, fault, input, options)?;
    let path = sample_fault_path(medium, rng);
    drive(runner, &path, &mut RngChooser(rng))
}

/// [`run_trial`] without validation, reusing a schedule.
pub(crate) fn run_trial_prepared<R: Rng + ?Sized>(
    medium: &Medium,
    schedule: &Schedule,
    fault: &FaultSpec,
    input: &[bool],
    rng: &mut R,
    options: TrialOptions,
) -> Result<(Vec<bool>, CostStats)> {
    let runner = TrialRunner::prepared(medium, Cow::Borrowed(schedule), fault, input, options);
    let path = sample_fault_path(medium, rng);
    drive(runner, &path, &mut RngChooser(rng))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clustersim::ScriptedChooser;
    use crate::medium::fixtures;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn total_decoherence_keeps_clusters_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for (name, d) in fixtures::all() {
            let m = d.medium.clone().with_eta(1.0);
            let input = vec![false; m.n];
            for _ in 0..50 {
                let (_, stats) = run_trial(&m, &d.fault, &input, &mut rng, TrialOptions::default()).unwrap();
                for s in &stats.steps {
                    assert_eq!(s.k, 0, "{name}");
                    assert!(s.max_cluster <= 2, "{name}");
                }
            }
        }
    }

    #[test]
    fn hadamard_gives_fair_coin() {
        let d = fixtures::single_hadamard();
        let m = d.medium.clone().with_eta(0.0);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let n = 20_000;
        let ones = (0..n)
            .filter(|_| run_trial(&m, &d.fault, &[false], &mut rng, TrialOptions::default()).unwrap().0[0])
            .count();
        let f = ones as f64 / n as f64;
        assert!((f - 0.5).abs() < 0.015, "{f}");
    }

    #[test]
    fn ghz_outputs_are_correlated() {
        let d = fixtures::ghz();
        let m = d.medium.clone().with_eta(0.0);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..500 {
            let (bits, _) = run_trial(&m, &d.fault, &[false; 3], &mut rng, TrialOptions::default()).unwrap();
            assert!(bits == [false; 3] || bits == [true; 3], "{bits:?}");
        }
    }

    #[test]
    fn entries_lower_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (_, d) in fixtures::all() {
            let input = vec![true; d.medium.n];
            let (_, stats) = run_trial(&d.medium, &d.fault, &input, &mut rng, TrialOptions::default()).unwrap();
            let schedule = d.medium.schedule();
            let live_steps: usize = schedule.steps.iter().map(|s| s.live.len()).sum();
            assert!(stats.entries_written >= 4 * live_steps as u64);
            assert_eq!(stats.steps.len(), d.medium.num_steps());
        }
    }

    #[test]
    fn scripted_run_is_reproducible() {
        let d = fixtures::ghz();
        let path = FaultPath::new([(0, 1), (2, 2)]).unwrap();
        let run = || {
            run_with_path(
                &d.medium,
                &d.fault,
                &[false; 3],
                &path,
                &mut ScriptedChooser::new(vec![1, 1, 1, 1, 1]),
                TrialOptions::default(),
            )
            .unwrap()
            .0
        };
        assert_eq!(run(), vec![true; 3]);
    }

    #[test]
    fn fault_on_dead_qubit_is_rejected() {
        let d = fixtures::staggered();
        let path = FaultPath::new([(2, 3)]).unwrap();
        let err = run_with_path(
            &d.medium,
            &d.fault,
            &[false; 3],
            &path,
            &mut ScriptedChooser::default(),
            TrialOptions::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidFaultPath(_)), "{err}");
    }

    #[test]
    fn wrong_input_length() {
        let d = fixtures::ghz();
        let err = TrialRunner::new(&d.medium, &d.fault, &[false], TrialOptions::default())
            .err()
            .unwrap();
        assert!(matches!(err, Error::InputLength { got: 1, expected: 3 }));
    }
}
