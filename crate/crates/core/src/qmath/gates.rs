//! Standard gate matrices.

use std::f64::consts::FRAC_1_SQRT_2;

use super::matrix::{ComplexMatrix, C64, ONE, ZERO};

pub fn identity() -> ComplexMatrix {
    ComplexMatrix::identity(2)
}

pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap()
}

pub fn pauli_y() -> ComplexMatrix {
    let i = C64::new(0.0, 1.0);
    ComplexMatrix::new(2, 2, vec![ZERO, -i, i, ZERO]).unwrap()
}

pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, -1.0]).unwrap()
}

pub fn hadamard() -> ComplexMatrix {
    let s = FRAC_1_SQRT_2;
    ComplexMatrix::from_real(2, 2, &[s, s, s, -s]).unwrap()
}

/// Phase gate `diag(1, e^{i phi})`.
pub fn phase(phi: f64) -> ComplexMatrix {
    ComplexMatrix::diagonal(&[ONE, C64::from_polar(1.0, phi)])
}

pub fn ry(theta: f64) -> ComplexMatrix {
    let (s, c) = (0.5 * theta).sin_cos();
    ComplexMatrix::from_real(2, 2, &[c, -s, s, c]).unwrap()
}

pub fn rx(theta: f64) -> ComplexMatrix {
    let (s, c) = (0.5 * theta).sin_cos();
    let mis = C64::new(0.0, -s);
    ComplexMatrix::new(2, 2, vec![C64::new(c, 0.0), mis, mis, C64::new(c, 0.0)]).unwrap()
}

/// Controlled-NOT, control on the first target.
pub fn cnot() -> ComplexMatrix {
    #[rustfmt::skip]
    let m = [
        1.0, 0.0, 0.0, 0.0,
        0.0, 1.0, 0.0, 0.0,
        0.0, 0.0, 0.0, 1.0,
        0.0, 0.0, 1.0, 0.0,
    ];
    ComplexMatrix::from_real(4, 4, &m).unwrap()
}

pub fn cz() -> ComplexMatrix {
    ComplexMatrix::from_real(4, 4, &{
        let mut m = [0.0; 16];
        m[0] = 1.0;
        m[5] = 1.0;
        m[10] = 1.0;
        m[15] = -1.0;
        m
    })
    .unwrap()
}

pub fn swap() -> ComplexMatrix {
    #[rustfmt::skip]
    let m = [
        1.0, 0.0, 0.0, 0.0,
        0.0, 0.0, 1.0, 0.0,
        0.0, 1.0, 0.0, 0.0,
        0.0, 0.0, 0.0, 1.0,
    ];
    ComplexMatrix::from_real(4, 4, &m).unwrap()
}

/// `CNOT * (H ⊗ I)`: maps `|00>` to a Bell pair.
pub fn entangler() -> ComplexMatrix {
    cnot().matmul(&hadamard().kron(&identity())).unwrap()
}
