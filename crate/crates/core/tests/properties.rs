mod common;

use decosim_core::clustersim::{run_trial, TrialOptions};
use decosim_core::medium::{enumerate_fault_paths, path_weight, sample_fault_path};
use decosim_core::phaselab::{decohere_step, matching_step_1d, matching_step_random, ClusterPartition};
use decosim_core::qmath::{gates, DensityMatrix, Observable};
use decosim_core::trial_rng;
use proptest::prelude::*;

fn state_and_rng(seed: u64, qubits: usize) -> (DensityMatrix, rand_chacha::ChaCha8Rng) {
    let mut rng = trial_rng(seed, qubits as u64);
    let rho = common::random_density(&mut rng, qubits, 3);
    (rho, rng)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tensor_then_reduce_recovers_factors(seed in any::<u64>(), na in 1usize..3, nb in 1usize..3) {
        let (a, mut rng) = state_and_rng(seed, na);
        let b = common::random_density(&mut rng, nb, 2);
        let ab = a.tensor(&b);
        let left: Vec<usize> = (0..na).collect();
        let right: Vec<usize> = (na..na + nb).collect();
        prop_assert!(ab.reduce(&left).unwrap().max_abs_diff(&a) < 1e-12);
        prop_assert!(ab.reduce(&right).unwrap().max_abs_diff(&b) < 1e-12);
    }

    #[test]
    fn permutation_round_trips(seed in any::<u64>(), n in 1usize..5) {
        let (rho, mut rng) = state_and_rng(seed, n);
        let mut order: Vec<usize> = (0..n).collect();
        rand::seq::SliceRandom::shuffle(order.as_mut_slice(), &mut rng);
        let mut inverse = vec![0; n];
        for (p, &o) in order.iter().enumerate() {
            inverse[o] = p;
        }
        let back = rho.permute(&order).unwrap().permute(&inverse).unwrap();
        prop_assert!(back.max_abs_diff(&rho) < 1e-15);
    }

    #[test]
    fn reduce_in_listed_order_matches_permute(seed in any::<u64>()) {
        let (rho, _) = state_and_rng(seed, 3);
        let direct = rho.reduce(&[2, 0]).unwrap();
        let via = rho.permute(&[2, 0, 1]).unwrap().reduce(&[0, 1]).unwrap();
        prop_assert!(direct.max_abs_diff(&via) < 1e-14);
    }

    #[test]
    fn unitaries_preserve_state_properties(seed in any::<u64>(), n in 1usize..4) {
        let (rho, mut rng) = state_and_rng(seed, n);
        let k = if n >= 2 { 2 } else { 1 };
        let u = common::random_unitary(&mut rng, k);
        let targets: Vec<usize> = if k == 2 { vec![n - 1, 0] } else { vec![0] };
        let out = rho.apply_unitary(&u, &targets).unwrap();
        prop_assert!((out.trace() - 1.0).abs() < 1e-12);
        prop_assert!(out.matrix().is_hermitian(1e-12));
        prop_assert!(common::eigenvalues(out.matrix())[0] > -1e-10);
        // the inverse gate undoes it
        let back = out.apply_unitary(&u.adjoint(), &targets).unwrap();
        prop_assert!(back.max_abs_diff(&rho) < 1e-12);
    }

    #[test]
    fn extension_agrees_with_explicit_kron(seed in any::<u64>()) {
        let (rho, mut rng) = state_and_rng(seed, 3);
        let u = common::random_unitary(&mut rng, 1);
        let full = gates::identity().kron(&u).kron(&gates::identity());
        let a = rho.apply_unitary(&u, &[1]).unwrap();
        let b = rho.apply_unitary(&full, &[0, 1, 2]).unwrap();
        prop_assert!(a.max_abs_diff(&b) < 1e-12);
    }

    #[test]
    fn measurements_are_consistent(seed in any::<u64>(), n in 1usize..4) {
        let (rho, mut rng) = state_and_rng(seed, n);
        let obs = Observable::new(common::random_hermitian(&mut rng, 1)).unwrap();
        let target = n - 1;
        let outcomes = rho.measure_conditioned(&obs, &[target]).unwrap();
        let total: f64 = outcomes.iter().map(|o| o.probability).sum();
        prop_assert!((total - 1.0).abs() < 1e-10);
        let unconditioned = rho.measure_unconditioned(&obs, &[target]).unwrap();
        prop_assert!((unconditioned.trace() - 1.0).abs() < 1e-12);
        // the mixture of conditioned branches is the unconditioned state
        let mut mixed = outcomes[0].state.clone();
        let mut weight = outcomes[0].probability;
        for o in &outcomes[1..] {
            weight += o.probability;
            mixed = mixed.mix(&o.state, o.probability / weight).unwrap();
        }
        prop_assert!(mixed.max_abs_diff(&unconditioned) < 1e-10);
        // unconditioned measurement is idempotent
        let twice = unconditioned.measure_unconditioned(&obs, &[target]).unwrap();
        prop_assert!(twice.max_abs_diff(&unconditioned) < 1e-12);
    }

    #[test]
    fn fault_path_weights_sum_to_one(seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 0);
        let m = common::random_medium(&mut rng, &common::Shape::default());
        let paths = enumerate_fault_paths(&m, 12).unwrap();
        prop_assert_eq!(paths.len(), 1usize << m.fault_sites());
        let total: f64 = paths.iter().map(|(_, w)| w).sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
        let sampled = sample_fault_path(&m, &mut rng);
        prop_assert!(sampled.check_against(&m).is_ok());
        prop_assert!(path_weight(&m, &sampled).unwrap() > 0.0 || m.eta == 0.0 || m.eta == 1.0);
    }

    #[test]
    fn partition_sizes_are_conserved(seed in any::<u64>(), n in 2usize..200, eta in 0.0f64..1.0) {
        let mut rng = trial_rng(seed, 1);
        let mut p = ClusterPartition::new(n);
        let mut order = Vec::new();
        let mut mask = Vec::new();
        for t in 0..20 {
            if t % 3 == 0 {
                matching_step_1d(&mut p, t % 2 == 1);
            } else {
                matching_step_random(&mut p, &mut order, &mut rng);
            }
            decohere_step(&mut p, eta, &mut mask, &mut rng);
            prop_assert!(p.audit().is_ok(), "{:?}", p.audit());
            prop_assert_eq!(p.cluster_sizes().iter().sum::<usize>(), n);
        }
    }

    #[test]
    fn cluster_trials_keep_invariants(seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 2);
        let m = common::random_medium(&mut rng, &common::Shape { max_qubits: 4, max_sites: 20, max_step: 5, ..Default::default() });
        let input = common::random_bits(&mut rng, m.n);
        let (bits, stats) = run_trial(&m, &decosim_core::medium::FaultSpec::x(), &input, &mut rng, TrialOptions::default()).unwrap();
        prop_assert_eq!(bits.len(), m.result_qubits.len());
        prop_assert_eq!(stats.steps.len(), m.num_steps());
        let live: usize = m.schedule().steps.iter().map(|s| s.live.len()).sum();
        prop_assert!(stats.entries_written >= 4 * live as u64);
        for s in &stats.steps {
            prop_assert!(s.k <= m.n && s.k_star <= m.n && s.max_cluster <= m.n);
        }
    }
}
