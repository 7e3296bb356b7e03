//! Sampled behaviour: output distributions against exact ones, cost trends,
//! and consistency of the phase scans.

use decosim_core::clustersim::{sample_output_distribution, SamplingOptions};
use decosim_core::medium::{fixtures, generators, FaultSpec};
use decosim_core::oracle::{output_distribution_exact, total_variation, FaultChannel};
use decosim_core::phaselab::{effective_rate, eta_grid, scan_transition, Phase, ScanConfig, Topology};
use decosim_core::trial_rng;

#[test]
fn sampled_distributions_match_exact_ones() {
    for (name, d) in fixtures::all() {
        for fault in [FaultSpec::z(), FaultSpec::x()] {
            let m = d.medium.clone().with_eta(0.3);
            let input: Vec<bool> = (0..m.n).map(|q| q % 2 == 1).collect();
            let exact = output_distribution_exact(&m, &FaultChannel::from(&fault), &input).unwrap();
            let report = sample_output_distribution(&m, &fault, &input, 20_000, 9, SamplingOptions::default()).unwrap();
            assert_eq!(report.capped_trials, 0);
            let tv = total_variation(&exact, &report.distribution);
            assert!(tv <= 0.025, "{name}: tv {tv}");
        }
    }
}

#[test]
fn readout_follows_result_qubit_order() {
    let d = fixtures::staggered();
    let mut reversed = d.medium.clone();
    reversed.result_qubits.reverse();
    let input = [true, false, false];
    let ch = FaultChannel::from(&d.fault);
    let flip = |s: &String| s.chars().rev().collect::<String>();
    let a = output_distribution_exact(&d.medium, &ch, &input).unwrap();
    let b = output_distribution_exact(&reversed, &ch, &input).unwrap();
    for (k, p) in &a {
        assert!((b[&flip(k)] - p).abs() < 1e-12, "{k}");
    }
    let sb = sample_output_distribution(&reversed, &d.fault, &input, 20_000, 3, SamplingOptions::default()).unwrap();
    let flipped = sb.distribution.iter().map(|(k, p)| (flip(k), *p)).collect();
    assert!(total_variation(&a, &flipped) <= 0.025);
}

fn mean_entries(n: usize, depth: usize, eta: f64) -> f64 {
    let mut rng = trial_rng(31, depth as u64);
    let m = generators::random_matching(n, depth, eta, &generators::GateSet::fused(), &mut rng);
    let r = sample_output_distribution(&m, &FaultSpec::z(), &vec![false; n], 100, 5, SamplingOptions::default()).unwrap();
    assert_eq!(r.capped_trials, 0);
    r.summary.mean_entries
}

#[test]
fn cost_grows_with_depth_and_shrinks_with_noise() {
    let by_depth: Vec<f64> = [10, 20, 40].iter().map(|&t| mean_entries(6, t, 0.5)).collect();
    assert!(by_depth.windows(2).all(|w| w[0] < w[1]), "{by_depth:?}");
    let by_eta: Vec<f64> = [0.2, 0.5, 0.8].iter().map(|&e| mean_entries(6, 20, e)).collect();
    assert!(by_eta.windows(2).all(|w| w[0] >= w[1]), "{by_eta:?}");
}

fn inversions(phases: &[Phase]) -> usize {
    phases.windows(2).filter(|w| w[0] == Phase::Subcritical && w[1] == Phase::Supercritical).count()
}

#[test]
fn sparser_matching_rescales_the_transition() {
    let dense = ScanConfig {
        trials: 10,
        ..ScanConfig::new(Topology::Random, eta_grid(0.50, 0.80, 0.01).unwrap(), 41)
    };
    let sparse = ScanConfig {
        steps: 3 * dense.steps,
        match_every: 3,
        ..ScanConfig::new(Topology::Random, eta_grid(0.15, 0.45, 0.01).unwrap(), 43)
    };
    let sparse = ScanConfig { trials: 10, ..sparse };
    let a = scan_transition(&dense).unwrap();
    let b = scan_transition(&sparse).unwrap();
    for r in [&a, &b] {
        let phases: Vec<Phase> = r.points.iter().map(|p| p.phase).collect();
        assert!(inversions(&phases) <= 1, "{phases:?}");
    }
    let eta_dense = a.eta0.unwrap();
    let eta_sparse = effective_rate(b.eta0.unwrap(), 3);
    assert!((eta_dense - eta_sparse).abs() <= 0.05, "{eta_dense} vs {eta_sparse}");
}
