use super::kernels::{self, TargetLayout};
use super::matrix::{ComplexMatrix, C64, ONE, ZERO};
use super::observable::Observable;
use super::{PROBABILITY_FLOOR, TOLERANCE};
use crate::error::{Error, Result};

/// Hermitian, trace-one `2^n x 2^n` matrix over an ordered register of `n`
/// qubits (position 0 is the most significant index bit).
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    num_qubits: usize,
    matrix: ComplexMatrix,
}

/// One branch of a conditioned measurement.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub eigenvalue: f64,
    pub probability: f64,
    pub state: DensityMatrix,
}

impl DensityMatrix {
    /// Validates hermiticity and unit trace. Positivity is not checked here.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let num_qubits = matrix
            .qubit_order()
            .ok_or_else(|| Error::Dimension("density matrix must be 2^n x 2^n".into()))?;
        let dev = matrix.hermitian_deviation();
        if dev > TOLERANCE {
            return Err(Error::NotHermitian(dev));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > TOLERANCE || tr.im.abs() > TOLERANCE {
            return Err(Error::BadTrace(tr.re));
        }
        Ok(Self { num_qubits, matrix })
    }

    pub(crate) fn from_parts_unchecked(num_qubits: usize, matrix: ComplexMatrix) -> Self {
        debug_assert_eq!(matrix.rows(), 1 << num_qubits);
        Self { num_qubits, matrix }
    }

    /// `|b><b|` for a computational basis string, first bit most significant.
    pub fn basis_state(bits: &[bool]) -> Self {
        let n = bits.len();
        let idx = bits.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize);
        let dim = 1 << n;
        let mut m = ComplexMatrix::zeros(dim, dim);
        m[(idx, idx)] = ONE;
        Self::from_parts_unchecked(n, m)
    }

    /// The zero-qubit state: the 1x1 matrix `[1]`, neutral for `tensor`.
    pub fn scalar_one() -> Self {
        Self::from_parts_unchecked(0, ComplexMatrix::identity(1))
    }

    pub fn maximally_mixed(num_qubits: usize) -> Self {
        let dim = 1 << num_qubits;
        Self::from_parts_unchecked(
            num_qubits,
            ComplexMatrix::identity(dim).scale(C64::new(1.0 / dim as f64, 0.0)),
        )
    }

    /// `|psi><psi|` for a normalized amplitude vector.
    pub fn from_pure(amplitudes: &[C64]) -> Result<Self> {
        Self::new(ComplexMatrix::outer(amplitudes))
    }

    #[inline]
    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    #[inline]
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.matrix[(row, col)]
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    /// Diagonal entries as probabilities of computational basis states.
    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.matrix[(i, i)].re).collect()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.matrix.max_abs_diff(&other.matrix)
    }

    /// Tensor product; the result lists `self`'s qubits first.
    pub fn tensor(&self, other: &Self) -> Self {
        Self::from_parts_unchecked(
            self.num_qubits + other.num_qubits,
            self.matrix.kron(&other.matrix),
        )
    }

    /// `U~ rho U~^dagger` with `U` embedded at `targets` (in the order given).
    pub fn apply_unitary(&self, u: &ComplexMatrix, targets: &[usize]) -> Result<Self> {
        self.check_operator(u, targets)?;
        let dev = u.unitary_deviation();
        if dev > TOLERANCE {
            return Err(Error::NotUnitary(dev));
        }
        let mut out = self.clone();
        out.sandwich_in_place(u, targets)?;
        Ok(out)
    }

    /// In-place `A~ rho A~^dagger` for any operator `A`; no unitarity check.
    pub(crate) fn sandwich_in_place(&mut self, op: &ComplexMatrix, targets: &[usize]) -> Result<()> {
        self.check_operator(op, targets)?;
        let layout = TargetLayout::new(self.num_qubits, targets)?;
        let dim = self.dim();
        let data = self.matrix.data_mut();
        kernels::left_apply(data, dim, &layout, op);
        kernels::right_apply_adjoint(data, dim, &layout, op);
        Ok(())
    }

    fn check_operator(&self, op: &ComplexMatrix, targets: &[usize]) -> Result<()> {
        kernels::check_targets(self.num_qubits, targets)?;
        if op.qubit_order() != Some(targets.len()) {
            return Err(Error::Dimension(format!(
                "{}x{} operator on {} targets",
                op.rows(),
                op.cols(),
                targets.len()
            )));
        }
        Ok(())
    }

    /// Reduced density matrix on the listed positions, in the order listed.
    pub fn reduce(&self, keep: &[usize]) -> Result<Self> {
        if keep.is_empty() {
            return Err(Error::EmptySubset);
        }
        kernels::check_targets(self.num_qubits, keep)?;
        Ok(self.reduce_unchecked(keep))
    }

    pub(crate) fn reduce_unchecked(&self, keep: &[usize]) -> Self {
        let n = self.num_qubits;
        let traced: Vec<usize> = (0..n).filter(|p| !keep.contains(p)).collect();
        let kept_bits = kernels::scatter_table(n, keep);
        let traced_bits = kernels::scatter_table(n, &traced);
        let m = kept_bits.len();
        let dim = self.dim();
        let src = self.matrix.data();
        let mut out = vec![ZERO; m * m];
        for &tb in &traced_bits {
            for (a, &ka) in kept_bits.iter().enumerate() {
                let full = ka | tb;
                let row = &src[full * dim..(full + 1) * dim];
                let dst = &mut out[a * m..(a + 1) * m];
                for (d, &kb) in dst.iter_mut().zip(&kept_bits) {
                    *d += row[kb | tb];
                }
            }
        }
        Self::from_parts_unchecked(keep.len(), ComplexMatrix::new(m, m, out).unwrap())
    }

    /// Reorders the register: new position `p` holds current position `order[p]`.
    pub fn permute(&self, order: &[usize]) -> Result<Self> {
        if order.len() != self.num_qubits {
            return Err(Error::BadTargets {
                targets: order.to_vec(),
                num_qubits: self.num_qubits,
            });
        }
        if self.num_qubits == 0 {
            return Ok(self.clone());
        }
        kernels::check_targets(self.num_qubits, order)?;
        if order.iter().enumerate().all(|(i, &p)| i == p) {
            return Ok(self.clone());
        }
        let map = kernels::permutation_map(self.num_qubits, order);
        let dim = self.dim();
        let src = self.matrix.data();
        let mut out = Vec::with_capacity(dim * dim);
        for &r in &map {
            let row = &src[r * dim..(r + 1) * dim];
            out.extend(map.iter().map(|&c| row[c]));
        }
        Ok(Self::from_parts_unchecked(
            self.num_qubits,
            ComplexMatrix::new(dim, dim, out).unwrap(),
        ))
    }

    /// `tr(P~ rho)` for each eigenspace of `obs`, in eigenvalue order.
    pub fn outcome_probabilities(&self, obs: &Observable, targets: &[usize]) -> Result<Vec<f64>> {
        self.check_operator(obs.matrix(), targets)?;
        let layout = TargetLayout::new(self.num_qubits, targets)?;
        Ok(obs
            .eigenspaces()
            .iter()
            .map(|e| kernels::trace_product(self.matrix.data(), self.dim(), &layout, &e.projector).re)
            .collect())
    }

    /// `P~ rho P~ / p` for eigenspace `index`; `probability` must be `tr(P~ rho)`.
    pub(crate) fn condition_on(
        &self,
        obs: &Observable,
        index: usize,
        probability: f64,
        targets: &[usize],
    ) -> Result<Self> {
        let mut out = self.clone();
        out.sandwich_in_place(&obs.eigenspaces()[index].projector, targets)?;
        for z in out.matrix.data_mut() {
            *z /= probability;
        }
        Ok(out)
    }

    /// Conditioned measurement: each outcome above the probability floor, with
    /// its renormalized post-measurement state.
    pub fn measure_conditioned(&self, obs: &Observable, targets: &[usize]) -> Result<Vec<Outcome>> {
        let probs = self.outcome_probabilities(obs, targets)?;
        probs
            .iter()
            .enumerate()
            .filter(|(_, &p)| p >= PROBABILITY_FLOOR)
            .map(|(i, &p)| {
                Ok(Outcome {
                    eigenvalue: obs.eigenspaces()[i].value,
                    probability: p,
                    state: self.condition_on(obs, i, p, targets)?,
                })
            })
            .collect()
    }

    /// Unconditioned measurement `sum_l P~_l rho P~_l`.
    pub fn measure_unconditioned(&self, obs: &Observable, targets: &[usize]) -> Result<Self> {
        self.check_operator(obs.matrix(), targets)?;
        let eigen = obs.eigenspaces();
        if eigen.len() == 1 {
            return Ok(self.clone());
        }
        let mut acc = ComplexMatrix::zeros(self.dim(), self.dim());
        for e in eigen {
            let mut branch = self.clone();
            branch.sandwich_in_place(&e.projector, targets)?;
            acc.axpy(1.0, &branch.matrix);
        }
        Ok(Self::from_parts_unchecked(self.num_qubits, acc))
    }

    /// `(1 - w) self + w other`.
    pub fn mix(&self, other: &Self, w: f64) -> Result<Self> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::Dimension("mixing states of different sizes".into()));
        }
        let mut m = self.matrix.scale(C64::new(1.0 - w, 0.0));
        m.axpy(w, &other.matrix);
        Ok(Self::from_parts_unchecked(self.num_qubits, m))
    }
}

/// Free-function form of [`DensityMatrix::tensor`].
pub fn tensor(a: &DensityMatrix, b: &DensityMatrix) -> DensityMatrix {
    a.tensor(b)
}
