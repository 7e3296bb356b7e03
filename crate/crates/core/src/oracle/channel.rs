use serde::Serialize;

use crate::error::{Error, Result};
use crate::medium::FaultSpec;
use crate::qmath::{ComplexMatrix, DensityMatrix, Observable};

/// A single-qubit fault map: an unconditioned measurement, or a convex
/// mixture of them.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum FaultChannel {
    Collapse(Observable),
    /// Weights sum to one.
    Mixture(Vec<(f64, Observable)>),
}

impl From<&FaultSpec> for FaultChannel {
    fn from(f: &FaultSpec) -> Self {
        FaultChannel::Collapse(f.observable.clone())
    }
}

impl From<FaultSpec> for FaultChannel {
    fn from(f: FaultSpec) -> Self {
        FaultChannel::Collapse(f.observable)
    }
}

impl FaultChannel {
    /// The map applied to qubit position `target` of `rho`.
    pub fn apply(&self, rho: &DensityMatrix, target: usize) -> Result<DensityMatrix> {
        match self {
            FaultChannel::Collapse(obs) => rho.measure_unconditioned(obs, &[target]),
            FaultChannel::Mixture(parts) => {
                let mut acc = ComplexMatrix::zeros(rho.dim(), rho.dim());
                for (w, obs) in parts {
                    acc.axpy(*w, rho.measure_unconditioned(obs, &[target])?.matrix());
                }
                Ok(DensityMatrix::from_parts_unchecked(rho.num_qubits(), acc))
            }
        }
    }

    /// The collapse observable, if this channel is a single collapse.
    pub fn as_collapse(&self) -> Option<&Observable> {
        match self {
            FaultChannel::Collapse(o) => Some(o),
            FaultChannel::Mixture(_) => None,
        }
    }
}

/// Combines independent faults `(F_i, eta_i)` at one site into one channel
/// `F = sum_i (eta_i / eta) F_i` with total rate `eta = sum_i eta_i`.
pub fn composite_fault(faults: &[(FaultSpec, f64)]) -> Result<(FaultChannel, f64)> {
    if faults.is_empty() {
        return Err(Error::InvalidParameter("no faults to combine".into()));
    }
    if let Some((_, e)) = faults.iter().find(|(_, e)| !(*e >= 0.0)) {
        return Err(Error::InvalidParameter(format!("negative fault rate {e}")));
    }
    let eta: f64 = faults.iter().map(|(_, e)| e).sum();
    if eta > 1.0 + 1e-12 {
        return Err(Error::InvalidParameter(format!("fault rates sum to {eta}, above 1")));
    }
    if faults.len() == 1 {
        return Ok((FaultChannel::from(&faults[0].0), eta));
    }
    let parts = faults
        .iter()
        .map(|(f, e)| {
            let w = if eta > 0.0 { e / eta } else { 1.0 / faults.len() as f64 };
            (w, f.observable.clone())
        })
        .collect();
    Ok((FaultChannel::Mixture(parts), eta.min(1.0)))
}

/// `(1 - eta) rho + eta F(rho)` on qubit position `target`.
pub fn weak_fault_step(rho: &DensityMatrix, target: usize, channel: &FaultChannel, eta: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::InvalidParameter(format!("eta {eta} outside [0, 1]")));
    }
    if eta == 0.0 {
        return Ok(rho.clone());
    }
    let faulted = channel.apply(rho, target)?;
    if eta == 1.0 {
        return Ok(faulted);
    }
    rho.mix(&faulted, eta)
}
