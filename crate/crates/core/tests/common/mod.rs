#![allow(dead_code)]

use decosim_core::medium::{GateSpec, Medium};
use decosim_core::qmath::{ComplexMatrix, DensityMatrix, C64};
use nalgebra::DMatrix;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::StandardNormal;

fn gaussian<R: Rng>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-ish random unitary from the QR factor of a complex Gaussian matrix.
pub fn random_unitary<R: Rng>(rng: &mut R, qubits: usize) -> ComplexMatrix {
    let d = 1 << qubits;
    let g = DMatrix::<C64>::from_fn(d, d, |_, _| gaussian(rng));
    let q = g.qr().q();
    let data = (0..d).flat_map(|r| (0..d).map(move |c| (r, c))).map(|(r, c)| q[(r, c)]).collect();
    ComplexMatrix::new(d, d, data).unwrap()
}

/// Random hermitian matrix with distinct eigenvalues.
pub fn random_hermitian<R: Rng>(rng: &mut R, qubits: usize) -> ComplexMatrix {
    let d = 1 << qubits;
    let u = random_unitary(rng, qubits);
    let eig: Vec<C64> = (0..d).map(|i| C64::new(i as f64 + rng.random::<f64>() * 0.5, 0.0)).collect();
    u.matmul(&ComplexMatrix::diagonal(&eig))
        .unwrap()
        .matmul(&u.adjoint())
        .unwrap()
}

pub fn random_pure<R: Rng>(rng: &mut R, qubits: usize) -> DensityMatrix {
    let v: Vec<C64> = (0..1 << qubits).map(|_| gaussian(rng)).collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    DensityMatrix::from_pure(&v.iter().map(|z| z / norm).collect::<Vec<_>>()).unwrap()
}

/// Random mixture of `terms` pure states.
pub fn random_density<R: Rng>(rng: &mut R, qubits: usize, terms: usize) -> DensityMatrix {
    let mut rho = random_pure(rng, qubits);
    for k in 1..terms {
        rho = rho.mix(&random_pure(rng, qubits), 1.0 / (k + 1) as f64).unwrap();
    }
    rho
}

/// Eigenvalues of a hermitian matrix.
pub fn eigenvalues(m: &ComplexMatrix) -> Vec<f64> {
    let d = m.rows();
    let h = DMatrix::<C64>::from_fn(d, d, |r, c| m[(r, c)]);
    h.symmetric_eigenvalues().iter().copied().collect()
}

pub struct Shape {
    pub max_qubits: usize,
    pub max_sites: usize,
    pub max_step: usize,
    /// Probability that a gate is a measurement gate.
    pub measurement_rate: f64,
}

impl Default for Shape {
    fn default() -> Self {
        Self {
            max_qubits: 3,
            max_sites: 12,
            max_step: 4,
            measurement_rate: 0.15,
        }
    }
}

/// A valid random medium: staggered lifetimes, random one- and two-qubit
/// unitaries, occasional measurement gates and a random readout order.
pub fn random_medium<R: Rng>(rng: &mut R, shape: &Shape) -> Medium {
    loop {
        let n = rng.random_range(1..=shape.max_qubits);
        let lifetimes: Vec<(usize, usize)> = (0..n)
            .map(|q| {
                let b = if q == 0 { 0 } else { rng.random_range(0..=shape.max_step / 2) };
                let d = rng.random_range(b..=shape.max_step);
                (b, d)
            })
            .collect();
        let sites: usize = lifetimes.iter().map(|&(b, d)| d - b + 1).sum();
        if sites > shape.max_sites {
            continue;
        }
        let horizon = lifetimes.iter().map(|l| l.1).max().unwrap();
        let mut gates = Vec::new();
        for t in 0..=horizon {
            let mut live: Vec<usize> = (0..n).filter(|&q| lifetimes[q].0 <= t && t <= lifetimes[q].1).collect();
            live.shuffle(rng);
            let mut rest = &live[..];
            while !rest.is_empty() {
                let k = if rest.len() >= 2 && rng.random::<f64>() < 0.6 { 2 } else { 1 };
                let (group, tail) = rest.split_at(k);
                rest = tail;
                if rng.random::<f64>() < 0.2 {
                    continue;
                }
                let g = if k == 1 && rng.random::<f64>() < shape.measurement_rate {
                    GateSpec::measurement(random_hermitian(rng, 1), group.to_vec(), t)
                } else {
                    GateSpec::unitary(random_unitary(rng, k), group.to_vec(), t)
                };
                gates.push(g);
            }
        }
        let mut result_qubits: Vec<usize> = (0..n).filter(|_| rng.random::<f64>() < 0.7).collect();
        if result_qubits.is_empty() {
            result_qubits.push(rng.random_range(0..n));
        }
        result_qubits.shuffle(rng);
        let m = Medium {
            n,
            lifetimes,
            gates,
            eta: rng.random(),
            result_qubits,
        };
        assert!(m.validate().is_empty(), "{:?}", m.validate());
        return m;
    }
}

pub fn random_bits<R: Rng>(rng: &mut R, n: usize) -> Vec<bool> {
    (0..n).map(|_| rng.random()).collect()
}
