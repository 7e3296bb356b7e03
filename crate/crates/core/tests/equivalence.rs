//! The cluster simulator against the dense oracle: step-by-step state
//! equality on fixed trajectories, and the path-sum identity.

mod common;

use decosim_core::clustersim::{RecordingChooser, RngChooser, TrialOptions, TrialRunner};
use decosim_core::medium::{fixtures, sample_fault_path, FaultPath, FaultSpec, Medium};
use decosim_core::oracle::{FaultChannel, Oracle};
use decosim_core::trial_rng;
use rand::Rng;

/// Runs one random trajectory through both simulators and returns the worst
/// entrywise difference over all steps.
fn trajectory_gap<R: Rng>(medium: &Medium, fault: &FaultSpec, input: &[bool], rng: &mut R) -> f64 {
    let path = sample_fault_path(medium, rng);
    let mut runner = TrialRunner::new(medium, fault, input, TrialOptions::default()).unwrap();
    let mut chooser = RecordingChooser::new(RngChooser(rng));
    let mut cluster_states = Vec::new();
    while !runner.is_done() {
        let faulty: Vec<usize> = path.at_time(runner.next_step()).iter().map(|e| e.qubit).collect();
        runner.step(&faulty, &mut chooser).unwrap();
        runner.configuration().audit().unwrap();
        cluster_states.push(runner.configuration().global_state());
    }
    let outcomes = chooser.record.clone();
    assert_eq!(outcomes.len(), path.len());

    let mut worst = 0.0f64;
    Oracle::default()
        .evolve_conditioned(medium, &fault.observable, &path, &outcomes, input, |t, dense| {
            let (ids, state) = &cluster_states[t];
            assert_eq!(ids.as_slice(), dense.qubits(), "step {t}");
            worst = worst.max(state.max_abs_diff(dense.state()));
        })
        .unwrap();
    worst
}

#[test]
fn fixtures_match_dense_trajectories() {
    for (name, d) in fixtures::all() {
        for fault in [FaultSpec::z(), FaultSpec::x()] {
            for eta in [0.3, 0.8] {
                let m = d.medium.clone().with_eta(eta);
                for trial in 0..30 {
                    let mut rng = trial_rng(17, trial);
                    let input = common::random_bits(&mut rng, m.n);
                    let gap = trajectory_gap(&m, &fault, &input, &mut rng);
                    assert!(gap <= 1e-9, "{name}, eta {eta}, trial {trial}: {gap:e}");
                }
            }
        }
    }
}

#[test]
fn random_circuits_match_dense_trajectories() {
    let shape = common::Shape {
        max_qubits: 4,
        max_sites: 20,
        max_step: 5,
        ..Default::default()
    };
    for seed in 0..200 {
        let mut rng = trial_rng(23, seed);
        let m = common::random_medium(&mut rng, &shape);
        let fault = if rng.random() { FaultSpec::z() } else { FaultSpec::x() };
        let input = common::random_bits(&mut rng, m.n);
        let gap = trajectory_gap(&m, &fault, &input, &mut rng);
        assert!(gap <= 1e-9, "seed {seed}: {gap:e}");
    }
}

#[test]
fn weak_faults_equal_path_sum_on_random_circuits() {
    for seed in 0..20 {
        let mut rng = trial_rng(5, seed);
        let m = common::random_medium(&mut rng, &common::Shape::default());
        assert!(m.fault_sites() <= 12);
        let input = common::random_bits(&mut rng, m.n);
        let ch = FaultChannel::from(FaultSpec::new(decosim_core::qmath::Observable::new(common::random_hermitian(&mut rng, 1)).unwrap()).unwrap());
        let a = Oracle::default().evolve_exact(&m, &ch, &input).unwrap();
        let b = Oracle::default().path_sum_exact(&m, &ch, &input).unwrap();
        assert_eq!(a.qubits(), b.qubits());
        let gap = a.state().max_abs_diff(b.state());
        assert!(gap <= 1e-10, "seed {seed}: {gap:e}");
    }
}

#[test]
fn evolution_preserves_trace_and_hermiticity() {
    for seed in 0..30 {
        let mut rng = trial_rng(6, seed);
        let m = common::random_medium(&mut rng, &common::Shape::default());
        let input = common::random_bits(&mut rng, m.n);
        let ch = FaultChannel::from(FaultSpec::x());
        Oracle::default()
            .evolve_exact_observed(&m, &ch, &input, |t, s| {
                assert!((s.state().trace() - 1.0).abs() < 1e-12, "seed {seed} step {t}");
                assert!(s.state().matrix().is_hermitian(1e-12), "seed {seed} step {t}");
                let lowest = common::eigenvalues(s.state().matrix())[0];
                assert!(lowest > -1e-10, "seed {seed} step {t}: eigenvalue {lowest}");
            })
            .unwrap();
    }
}

#[test]
fn every_fault_path_has_a_valid_trajectory() {
    let d = fixtures::staggered();
    let all = FaultPath::new(d.medium.fault_site_list().iter().map(|e| (e.qubit, e.time))).unwrap();
    let ch = FaultChannel::from(FaultSpec::x());
    let s = Oracle::default().evolve_by_path(&d.medium, &ch, &all, &[true, false, true]).unwrap();
    assert!((s.state().trace() - 1.0).abs() < 1e-12);
}
