//! Index arithmetic for acting on a subset of qubits of a `2^n x 2^n` matrix
//! without materializing the extended operator.
//!
//! Qubit position `p` of an `n`-qubit register maps to bit `n - 1 - p` of a
//! basis index, so position 0 is the most significant bit.

use super::matrix::{ComplexMatrix, C64, ZERO};
use crate::error::{Error, Result};

#[inline]
pub(crate) fn bit_of(num_qubits: usize, position: usize) -> usize {
    1 << (num_qubits - 1 - position)
}

/// Basis offsets of a `k`-qubit operator embedded at `targets`.
pub(crate) struct TargetLayout {
    offsets: Vec<usize>,
    bases: Vec<usize>,
}

impl TargetLayout {
    pub(crate) fn new(num_qubits: usize, targets: &[usize]) -> Result<Self> {
        check_targets(num_qubits, targets)?;
        let k = targets.len();
        let bits: Vec<usize> = targets.iter().map(|&p| bit_of(num_qubits, p)).collect();
        let mask: usize = bits.iter().sum();
        let offsets = (0..1usize << k)
            .map(|m| {
                bits.iter()
                    .enumerate()
                    .filter(|(j, _)| (m >> (k - 1 - j)) & 1 == 1)
                    .map(|(_, &b)| b)
                    .sum()
            })
            .collect();
        let bases = (0..1usize << num_qubits).filter(|i| i & mask == 0).collect();
        Ok(Self { offsets, bases })
    }
}

pub(crate) fn check_targets(num_qubits: usize, targets: &[usize]) -> Result<()> {
    let bad = targets.is_empty()
        || targets.iter().any(|&t| t >= num_qubits)
        || targets
            .iter()
            .enumerate()
            .any(|(i, t)| targets[..i].contains(t));
    if bad {
        return Err(Error::BadTargets {
            targets: targets.to_vec(),
            num_qubits,
        });
    }
    Ok(())
}

/// `data <- op~ * data` for a square `dim x dim` row-major buffer.
pub(crate) fn left_apply(data: &mut [C64], dim: usize, layout: &TargetLayout, op: &ComplexMatrix) {
    let m = layout.offsets.len();
    let mut v = vec![ZERO; m];
    let ops = op.data();
    for &base in &layout.bases {
        for col in 0..dim {
            for (slot, off) in v.iter_mut().zip(&layout.offsets) {
                *slot = data[(base + off) * dim + col];
            }
            for (r, off) in layout.offsets.iter().enumerate() {
                let row = &ops[r * m..(r + 1) * m];
                let mut acc = ZERO;
                for (a, x) in row.iter().zip(&v) {
                    acc += a * x;
                }
                data[(base + off) * dim + col] = acc;
            }
        }
    }
}

/// `data <- data * op~^dagger`.
pub(crate) fn right_apply_adjoint(
    data: &mut [C64],
    dim: usize,
    layout: &TargetLayout,
    op: &ComplexMatrix,
) {
    let m = layout.offsets.len();
    let mut v = vec![ZERO; m];
    let ops = op.data();
    for row in data.chunks_exact_mut(dim) {
        for &base in &layout.bases {
            for (slot, off) in v.iter_mut().zip(&layout.offsets) {
                *slot = row[base + off];
            }
            for (c, off) in layout.offsets.iter().enumerate() {
                let orow = &ops[c * m..(c + 1) * m];
                let mut acc = ZERO;
                for (a, x) in orow.iter().zip(&v) {
                    acc += x * a.conj();
                }
                row[base + off] = acc;
            }
        }
    }
}

/// `new[i][j] = old[map[i]][map[j]]` where `map` sends a new basis index to
/// its old index; new position `p` holds old position `order[p]`.
pub(crate) fn permutation_map(num_qubits: usize, order: &[usize]) -> Vec<usize> {
    (0..1usize << num_qubits)
        .map(|i| {
            order
                .iter()
                .enumerate()
                .filter(|&(p, _)| i & bit_of(num_qubits, p) != 0)
                .map(|(_, &old)| bit_of(num_qubits, old))
                .sum()
        })
        .collect()
}

/// Contribution of each sub-index of the listed positions to a full basis index.
pub(crate) fn scatter_table(num_qubits: usize, positions: &[usize]) -> Vec<usize> {
    let k = positions.len();
    (0..1usize << k)
        .map(|a| {
            positions
                .iter()
                .enumerate()
                .filter(|&(j, _)| (a >> (k - 1 - j)) & 1 == 1)
                .map(|(_, &p)| bit_of(num_qubits, p))
                .sum()
        })
        .collect()
}

/// `tr(op~ * data)` without forming the product.
pub(crate) fn trace_product(data: &[C64], dim: usize, layout: &TargetLayout, op: &ComplexMatrix) -> C64 {
    let m = layout.offsets.len();
    let ops = op.data();
    let mut acc = ZERO;
    for &base in &layout.bases {
        for (r, ro) in layout.offsets.iter().enumerate() {
            for (c, co) in layout.offsets.iter().enumerate() {
                acc += ops[r * m + c] * data[(base + co) * dim + base + ro];
            }
        }
    }
    acc
}
