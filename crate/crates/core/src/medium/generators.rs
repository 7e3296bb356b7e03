//! Circuit families used by the experiments: random matchings, 1D
//! nearest-neighbour alternation and sequential (one gate per step) circuits.
//!
//! Every qubit lives from step 0 to `depth - 1` and is a result qubit.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{GateSpec, Medium};
use crate::qmath::{gates, ComplexMatrix};

/// Gates placed on matched pairs.
#[derive(Clone, Debug)]
pub struct GateSet {
    /// Applied to the first qubit of each pair one step before `pair`.
    pub single: Option<ComplexMatrix>,
    pub pair: ComplexMatrix,
}

impl GateSet {
    /// A single two-qubit gate `CNOT (H ⊗ I)` per pair and step.
    pub fn fused() -> Self {
        Self {
            single: None,
            pair: gates::entangler(),
        }
    }

    /// Hadamard on the control, then CNOT on the next step.
    pub fn layered() -> Self {
        Self {
            single: Some(gates::hadamard()),
            pair: gates::cnot(),
        }
    }

    fn round_len(&self) -> usize {
        if self.single.is_some() {
            2
        } else {
            1
        }
    }

    fn emit(&self, pairs: &[(usize, usize)], round_start: usize, depth: usize, out: &mut Vec<GateSpec>) {
        let mut t = round_start;
        if let Some(s) = &self.single {
            for &(c, _) in pairs {
                out.push(GateSpec::unitary(s.clone(), vec![c], t));
            }
            t += 1;
        }
        if t < depth {
            for &(c, x) in pairs {
                out.push(GateSpec::unitary(self.pair.clone(), vec![c, x], t));
            }
        }
    }
}

fn frame(n: usize, depth: usize, eta: f64, gates: Vec<GateSpec>) -> Medium {
    let last = depth.saturating_sub(1);
    Medium {
        n,
        lifetimes: vec![(0, last); n],
        gates,
        eta,
        result_qubits: (0..n).collect(),
    }
}

/// Each round, a uniformly random perfect matching (one qubit idle when `n` is odd).
pub fn random_matching<R: Rng + ?Sized>(
    n: usize,
    depth: usize,
    eta: f64,
    gate_set: &GateSet,
    rng: &mut R,
) -> Medium {
    let mut out = Vec::new();
    let mut order: Vec<usize> = (0..n).collect();
    for start in (0..depth).step_by(gate_set.round_len()) {
        order.shuffle(rng);
        let pairs: Vec<(usize, usize)> = order.chunks_exact(2).map(|p| (p[0], p[1])).collect();
        gate_set.emit(&pairs, start, depth, &mut out);
    }
    frame(n, depth, eta, out)
}

/// Qubits on a line, paired with the left and right neighbour on alternate rounds.
pub fn nearest_neighbor_1d(n: usize, depth: usize, eta: f64, gate_set: &GateSet) -> Medium {
    let mut out = Vec::new();
    for (round, start) in (0..depth).step_by(gate_set.round_len()).enumerate() {
        let parity = round % 2;
        let pairs: Vec<(usize, usize)> = (parity..n.saturating_sub(1))
            .step_by(2)
            .map(|i| (i, i + 1))
            .collect();
        gate_set.emit(&pairs, start, depth, &mut out);
    }
    frame(n, depth, eta, out)
}

/// One gate per step on a uniformly random pair.
pub fn sequential<R: Rng + ?Sized>(
    n: usize,
    depth: usize,
    eta: f64,
    gate_set: &GateSet,
    rng: &mut R,
) -> Medium {
    let mut out = Vec::new();
    if n >= 2 {
        for start in (0..depth).step_by(gate_set.round_len()) {
            let c = rng.random_range(0..n);
            let mut x = rng.random_range(0..n - 1);
            if x >= c {
                x += 1;
            }
            gate_set.emit(&[(c, x)], start, depth, &mut out);
        }
    }
    frame(n, depth, eta, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_circuits_validate() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in [1, 2, 5, 8] {
            for depth in [1, 2, 7] {
                for gs in [GateSet::fused(), GateSet::layered()] {
                    let ms = [
                        random_matching(n, depth, 0.2, &gs, &mut rng),
                        nearest_neighbor_1d(n, depth, 0.2, &gs),
                        sequential(n, depth, 0.2, &gs, &mut rng),
                    ];
                    for m in ms {
                        assert!(m.validate().is_empty(), "{:?}", m.validate());
                    }
                }
            }
        }
    }

    #[test]
    fn random_matching_pairs_everyone() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let m = random_matching(6, 4, 0.0, &GateSet::fused(), &mut rng);
        assert_eq!(m.gates.len(), 12);
        for t in 0..4 {
            let mut seen: Vec<usize> = m
                .gates
                .iter()
                .filter(|g| g.time() == t)
                .flat_map(|g| g.targets().to_vec())
                .collect();
            seen.sort();
            assert_eq!(seen, (0..6).collect::<Vec<_>>());
        }
    }

    #[test]
    fn one_dimensional_alternates() {
        let m = nearest_neighbor_1d(4, 2, 0.0, &GateSet::fused());
        let at = |t| {
            m.gates
                .iter()
                .filter(|g| g.time() == t)
                .map(|g| g.targets().to_vec())
                .collect::<Vec<_>>()
        };
        assert_eq!(at(0), vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(at(1), vec![vec![1, 2]]);
    }

    #[test]
    fn sequential_layered_has_one_gate_per_step() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let m = sequential(5, 9, 0.0, &GateSet::layered(), &mut rng);
        assert_eq!(m.gates.len(), 9);
        for (t, g) in m.gates.iter().enumerate() {
            assert_eq!(g.time(), t);
            assert_eq!(g.targets().len(), 1 + t % 2);
        }
        // CNOT control is the qubit that just received the Hadamard
        assert_eq!(m.gates[0].targets()[0], m.gates[1].targets()[0]);
    }
}
