use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::matrix::{ComplexMatrix, C64, ONE, ZERO};
use super::TOLERANCE;
use crate::error::{Error, Result};

/// One eigenvalue of an observable together with the projector onto its eigenspace.
#[derive(Clone, Debug, PartialEq)]
pub struct Eigenspace {
    pub value: f64,
    pub projector: ComplexMatrix,
}

/// A hermitian matrix with its spectral decomposition, eigenvalues ascending
/// and pairwise distinct.
///
/// Decomposition is closed-form for single-qubit matrices; multi-qubit
/// observables must be diagonal in the computational basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Observable {
    num_qubits: usize,
    matrix: ComplexMatrix,
    eigen: Vec<Eigenspace>,
}

impl Observable {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let k = matrix
            .qubit_order()
            .filter(|&k| k >= 1)
            .ok_or_else(|| Error::Dimension("observable must be 2^k x 2^k with k >= 1".into()))?;
        let dev = matrix.hermitian_deviation();
        if dev > TOLERANCE {
            return Err(Error::NotHermitian(dev));
        }
        if k == 1 {
            return eigendecompose_1q(&matrix);
        }
        let dim = matrix.rows();
        let off_diagonal = (0..dim)
            .flat_map(|i| (0..dim).map(move |j| (i, j)))
            .filter(|(i, j)| i != j)
            .map(|(i, j)| matrix[(i, j)].norm())
            .fold(0.0, f64::max);
        if off_diagonal > TOLERANCE {
            return Err(Error::UnsupportedObservable(format!(
                "{k}-qubit observables must be diagonal in the computational basis"
            )));
        }
        let mut values: Vec<f64> = Vec::new();
        for i in 0..dim {
            let v = matrix[(i, i)].re;
            if !values.iter().any(|u| (u - v).abs() <= TOLERANCE) {
                values.push(v);
            }
        }
        values.sort_by(f64::total_cmp);
        let eigen = values
            .into_iter()
            .map(|value| {
                let diag: Vec<C64> = (0..dim)
                    .map(|i| {
                        if (matrix[(i, i)].re - value).abs() <= TOLERANCE {
                            ONE
                        } else {
                            ZERO
                        }
                    })
                    .collect();
                Eigenspace {
                    value,
                    projector: ComplexMatrix::diagonal(&diag),
                }
            })
            .collect();
        Ok(Self {
            num_qubits: k,
            matrix,
            eigen,
        })
    }

    /// Builds an observable from explicit eigenspaces; the projectors must be
    /// orthogonal, idempotent and complete.
    pub fn from_eigenspaces(mut eigen: Vec<Eigenspace>) -> Result<Self> {
        let first = eigen
            .first()
            .ok_or_else(|| Error::UnsupportedObservable("no eigenspaces".into()))?;
        let k = first
            .projector
            .qubit_order()
            .ok_or_else(|| Error::Dimension("projector must be 2^k x 2^k".into()))?;
        let dim = 1 << k;
        eigen.sort_by(|a, b| a.value.total_cmp(&b.value));
        let mut matrix = ComplexMatrix::zeros(dim, dim);
        let mut total = ComplexMatrix::zeros(dim, dim);
        for (i, e) in eigen.iter().enumerate() {
            if e.projector.rows() != dim || !e.projector.is_square() {
                return Err(Error::Dimension("projectors differ in size".into()));
            }
            if i > 0 && (e.value - eigen[i - 1].value).abs() <= TOLERANCE {
                return Err(Error::UnsupportedObservable("repeated eigenvalue".into()));
            }
            let sq = e.projector.matmul(&e.projector)?;
            if sq.max_abs_diff(&e.projector) > TOLERANCE || !e.projector.is_hermitian(TOLERANCE) {
                return Err(Error::UnsupportedObservable("projector is not an orthogonal projection".into()));
            }
            for other in &eigen[..i] {
                let cross = e.projector.matmul(&other.projector)?;
                if cross.max_abs_diff(&ComplexMatrix::zeros(dim, dim)) > TOLERANCE {
                    return Err(Error::UnsupportedObservable("projectors are not orthogonal".into()));
                }
            }
            matrix.axpy(e.value, &e.projector);
            total.axpy(1.0, &e.projector);
        }
        if total.max_abs_diff(&ComplexMatrix::identity(dim)) > TOLERANCE {
            return Err(Error::UnsupportedObservable("projectors do not sum to identity".into()));
        }
        Ok(Self {
            num_qubits: k,
            matrix,
            eigen,
        })
    }

    /// Single-qubit computational-basis measurement: outcome index equals the bit.
    pub fn basic() -> Self {
        Self::new(ComplexMatrix::from_real(2, 2, &[0.0, 0.0, 0.0, 1.0]).unwrap()).unwrap()
    }

    pub fn pauli_z() -> Self {
        Self::new(super::gates::pauli_z()).unwrap()
    }

    pub fn pauli_x() -> Self {
        Self::new(super::gates::pauli_x()).unwrap()
    }

    pub fn pauli_y() -> Self {
        Self::new(super::gates::pauli_y()).unwrap()
    }

    #[inline]
    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    #[inline]
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    #[inline]
    pub fn eigenspaces(&self) -> &[Eigenspace] {
        &self.eigen
    }

    /// True when every eigenspace is one-dimensional.
    pub fn is_nondegenerate(&self) -> bool {
        self.eigen.len() == 1 << self.num_qubits
    }
}

/// Closed-form spectral decomposition of a 2x2 hermitian matrix.
///
/// For `h = [[a, b], [b*, d]]` the eigenvalues are `m ± r` with
/// `m = (a + d) / 2`, `r = sqrt(((a - d) / 2)^2 + |b|^2)`, and the projector
/// onto `m + r` is `(h - (m - r) I) / 2r`.
pub fn eigendecompose_1q(h: &ComplexMatrix) -> Result<Observable> {
    if h.rows() != 2 || h.cols() != 2 {
        return Err(Error::Dimension("expected a 2x2 matrix".into()));
    }
    let dev = h.hermitian_deviation();
    if dev > TOLERANCE {
        return Err(Error::NotHermitian(dev));
    }
    let a = h[(0, 0)].re;
    let d = h[(1, 1)].re;
    let b = h[(0, 1)];
    let mean = 0.5 * (a + d);
    let half_gap = 0.5 * (a - d);
    let r = (half_gap * half_gap + b.norm_sqr()).sqrt();
    let eigen = if r <= TOLERANCE {
        vec![Eigenspace {
            value: mean,
            projector: ComplexMatrix::identity(2),
        }]
    } else {
        let hi = ComplexMatrix::new(
            2,
            2,
            vec![
                C64::new(half_gap + r, 0.0),
                b,
                b.conj(),
                C64::new(r - half_gap, 0.0),
            ],
        )?
        .scale(C64::new(0.5 / r, 0.0));
        let mut lo = ComplexMatrix::identity(2);
        lo.axpy(-1.0, &hi);
        vec![
            Eigenspace {
                value: mean - r,
                projector: lo,
            },
            Eigenspace {
                value: mean + r,
                projector: hi,
            },
        ]
    };
    // Keep the caller's matrix, symmetrized, so serialization round-trips.
    let mut matrix = h.clone();
    matrix[(1, 0)] = matrix[(0, 1)].conj();
    matrix[(0, 0)].im = 0.0;
    matrix[(1, 1)].im = 0.0;
    Ok(Observable {
        num_qubits: 1,
        matrix,
        eigen,
    })
}

impl Serialize for Observable {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.matrix.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Observable {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let m = ComplexMatrix::deserialize(deserializer)?;
        Observable::new(m).map_err(serde::de::Error::custom)
    }
}
