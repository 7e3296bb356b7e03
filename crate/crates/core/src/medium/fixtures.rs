//! Small canonical circuits (at most 3 qubits, at most 5 steps) used for
//! cross-checking the simulators. The same circuits ship as JSON under
//! `crates/core/fixtures/`.

use super::{CircuitDocument, FaultSpec, GateSpec, Medium};
use crate::qmath::{gates, ComplexMatrix};

const ETA: f64 = 0.3;

fn u(m: ComplexMatrix, targets: &[usize], t: usize) -> GateSpec {
    GateSpec::unitary(m, targets.to_vec(), t)
}

fn doc(n: usize, lifetimes: &[(usize, usize)], result_qubits: &[usize], gates: Vec<GateSpec>) -> CircuitDocument {
    CircuitDocument {
        medium: Medium {
            n,
            lifetimes: lifetimes.to_vec(),
            gates,
            eta: ETA,
            result_qubits: result_qubits.to_vec(),
        },
        fault: FaultSpec::z(),
    }
}

/// `H` then a CNOT chain: `(|000> + |111>) / sqrt 2` when noiseless.
pub fn ghz() -> CircuitDocument {
    doc(
        3,
        &[(0, 2); 3],
        &[0, 1, 2],
        vec![
            u(gates::hadamard(), &[0], 0),
            u(gates::cnot(), &[0, 1], 1),
            u(gates::cnot(), &[1, 2], 2),
        ],
    )
}

/// Bell pair, a Z measurement gate on the first qubit, then a Hadamard on the second.
pub fn bell_measure() -> CircuitDocument {
    doc(
        2,
        &[(0, 3); 2],
        &[0, 1],
        vec![
            u(gates::hadamard(), &[0], 0),
            u(gates::cnot(), &[0, 1], 1),
            GateSpec::measurement(gates::pauli_z(), vec![0], 2),
            u(gates::hadamard(), &[1], 3),
        ],
    )
}

/// Qubit 1 is born at step 1; qubit 2 dies after step 2 without being read.
pub fn staggered() -> CircuitDocument {
    doc(
        3,
        &[(0, 3), (1, 3), (0, 2)],
        &[0, 1],
        vec![
            u(gates::hadamard(), &[0], 0),
            u(gates::hadamard(), &[2], 0),
            u(gates::cnot(), &[0, 1], 1),
            u(gates::cnot(), &[2, 1], 2),
            u(gates::hadamard(), &[0], 3),
        ],
    )
}

pub fn single_hadamard() -> CircuitDocument {
    doc(1, &[(0, 1)], &[0], vec![u(gates::hadamard(), &[0], 0)])
}

/// Classical permutation circuit: a bit moved along by swaps.
pub fn swap_chain() -> CircuitDocument {
    doc(
        3,
        &[(0, 2); 3],
        &[0, 1, 2],
        vec![
            u(gates::pauli_x(), &[0], 0),
            u(gates::swap(), &[0, 1], 1),
            u(gates::swap(), &[1, 2], 2),
        ],
    )
}

/// Rotations with complex phases and a controlled-Z.
pub fn phased_rotations() -> CircuitDocument {
    doc(
        2,
        &[(0, 4); 2],
        &[0, 1],
        vec![
            u(gates::ry(1.1), &[0], 0),
            u(gates::rx(0.7), &[1], 0),
            u(gates::cnot(), &[0, 1], 1),
            u(gates::phase(0.9), &[0], 2),
            u(gates::rx(1.9), &[1], 2),
            u(gates::cz(), &[1, 0], 3),
            u(gates::hadamard(), &[0], 4),
            u(gates::ry(0.4), &[1], 4),
        ],
    )
}

/// A result qubit that dies before the end of the circuit.
pub fn early_result() -> CircuitDocument {
    doc(
        2,
        &[(0, 1), (0, 3)],
        &[0, 1],
        vec![
            u(gates::hadamard(), &[0], 0),
            u(gates::ry(0.8), &[1], 0),
            u(gates::cnot(), &[0, 1], 1),
            u(gates::hadamard(), &[1], 2),
            u(gates::phase(1.3), &[1], 3),
        ],
    )
}

/// A two-qubit parity (ZZ) measurement gate inside an entangling circuit.
pub fn parity_measure() -> CircuitDocument {
    doc(
        3,
        &[(0, 3); 3],
        &[0, 1, 2],
        vec![
            u(gates::hadamard(), &[0], 0),
            u(gates::ry(0.6), &[2], 0),
            u(gates::cnot(), &[0, 1], 1),
            GateSpec::measurement(gates::pauli_z().kron(&gates::pauli_z()), vec![1, 2], 2),
            u(gates::hadamard(), &[1], 3),
            u(gates::hadamard(), &[2], 3),
        ],
    )
}

/// The full fixture suite, keyed by file stem.
pub fn all() -> Vec<(&'static str, CircuitDocument)> {
    vec![
        ("ghz", ghz()),
        ("bell_measure", bell_measure()),
        ("staggered", staggered()),
        ("single_hadamard", single_hadamard()),
        ("swap_chain", swap_chain()),
        ("phased_rotations", phased_rotations()),
        ("early_result", early_result()),
        ("parity_measure", parity_measure()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_is_valid_and_small() {
        let suite = all();
        assert_eq!(suite.len(), 8);
        for (name, d) in suite {
            assert!(d.medium.validate().is_empty(), "{name}: {:?}", d.medium.validate());
            assert!(d.medium.n <= 3, "{name}");
            assert!(d.medium.horizon().unwrap() <= 4, "{name}");
        }
    }
}
