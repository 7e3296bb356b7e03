//! Exact dense evolution of a decohered medium, for small circuits.
//!
//! All evolutions follow the same step order as the cluster simulator:
//! deaths, births, gates, then faults. The state is kept over the qubits
//! present at the current step in ascending id order; result qubits stay
//! present after their lifetime ends.

mod channel;

use std::collections::BTreeMap;

use rayon::prelude::*;

pub use channel::{composite_fault, weak_fault_step, FaultChannel};

use crate::error::{Error, Result};
use crate::medium::{FaultEvent, FaultPath, GateKind, Medium, DEFAULT_ENUMERATION_CAP};
use crate::qmath::{ComplexMatrix, DensityMatrix, Observable};

/// Largest medium, in qubits, the dense oracle accepts by default.
pub const DEFAULT_DENSE_CAP: usize = 12;

/// A dense state together with the qubit id of each position.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseState {
    qubits: Vec<usize>,
    state: DensityMatrix,
}

impl DenseState {
    fn empty() -> Self {
        Self {
            qubits: Vec::new(),
            state: DensityMatrix::scalar_one(),
        }
    }

    /// Qubit ids, ascending; position `i` of the state is `qubits()[i]`.
    pub fn qubits(&self) -> &[usize] {
        &self.qubits
    }

    pub fn state(&self) -> &DensityMatrix {
        &self.state
    }

    pub fn into_state(self) -> DensityMatrix {
        self.state
    }

    fn position(&self, q: usize) -> Result<usize> {
        self.qubits.binary_search(&q).map_err(|_| Error::QubitNotLive(q))
    }

    fn insert(&mut self, q: usize, bit: bool) -> Result<()> {
        let at = self.qubits.binary_search(&q).unwrap_err();
        let state = self.state.tensor(&DensityMatrix::basis_state(&[bit]));
        let last = self.qubits.len();
        let order: Vec<usize> = (0..at).chain([last]).chain(at..last).collect();
        self.state = state.permute(&order)?;
        self.qubits.insert(at, q);
        Ok(())
    }

    fn remove(&mut self, q: usize) -> Result<()> {
        let pos = self.position(q)?;
        let keep: Vec<usize> = (0..self.qubits.len()).filter(|&p| p != pos).collect();
        self.state = self.state.reduce_unchecked(&keep);
        self.qubits.remove(pos);
        Ok(())
    }

    fn positions(&self, qubits: &[usize]) -> Result<Vec<usize>> {
        qubits.iter().map(|&q| self.position(q)).collect()
    }

    /// Probabilities of computational-basis readouts of `qubits`, keyed by
    /// bit string in the order given.
    pub fn readout_distribution(&self, qubits: &[usize]) -> Result<BTreeMap<String, f64>> {
        let pos = self.positions(qubits)?;
        let n = self.qubits.len();
        let mut out: BTreeMap<String, f64> = BTreeMap::new();
        for (index, p) in self.state.diagonal().into_iter().enumerate() {
            if p <= 0.0 {
                continue;
            }
            let key: String = pos
                .iter()
                .map(|&k| if index >> (n - 1 - k) & 1 == 1 { '1' } else { '0' })
                .collect();
            *out.entry(key).or_default() += p;
        }
        Ok(out)
    }
}

/// What happens at the fault sites of a step.
enum FaultMode<'a> {
    Weak(&'a FaultChannel, f64),
    Path(&'a FaultChannel, &'a FaultPath),
    Conditioned(&'a Observable, &'a FaultPath, &'a [usize]),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Oracle {
    /// Largest `n` accepted.
    pub dense_cap: usize,
    /// Largest number of fault sites accepted by path enumeration.
    pub enumeration_cap: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Self {
            dense_cap: DEFAULT_DENSE_CAP,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
        }
    }
}

impl Oracle {
    fn prepare(&self, medium: &Medium, input: &[bool]) -> Result<()> {
        if medium.n > self.dense_cap {
            return Err(Error::DenseCapExceeded {
                n: medium.n,
                cap: self.dense_cap,
            });
        }
        medium.check()?;
        medium.check_input(input)
    }

    fn drive(
        &self,
        medium: &Medium,
        input: &[bool],
        mode: FaultMode<'_>,
        mut observe: impl FnMut(usize, &DenseState),
    ) -> Result<DenseState> {
        self.prepare(medium, input)?;
        let schedule = medium.schedule();
        let mut s = DenseState::empty();
        for &q in &schedule.initial {
            s.insert(q, input[q])?;
        }
        let mut outcomes_used = 0;
        for (t, plan) in schedule.steps.iter().enumerate() {
            for &q in &plan.deaths {
                s.remove(q)?;
            }
            for &q in &plan.births {
                s.insert(q, input[q])?;
            }
            for &gi in &plan.gates {
                let g = &medium.gates[gi];
                let pos = s.positions(g.targets())?;
                match g.kind() {
                    GateKind::Unitary => s.state.sandwich_in_place(g.matrix(), &pos)?,
                    GateKind::Measurement => {
                        let obs = g
                            .observable()
                            .ok_or_else(|| Error::UnsupportedObservable("measurement gate without spectrum".into()))?;
                        s.state = s.state.measure_unconditioned(obs, &pos)?;
                    }
                }
            }
            match mode {
                FaultMode::Weak(channel, eta) => {
                    for &q in &plan.live {
                        s.state = weak_fault_step(&s.state, s.position(q)?, channel, eta)?;
                    }
                }
                FaultMode::Path(channel, path) => {
                    for e in path.at_time(t) {
                        s.state = channel.apply(&s.state, s.position(e.qubit)?)?;
                    }
                }
                FaultMode::Conditioned(obs, path, outcomes) => {
                    for e in path.at_time(t) {
                        let index = *outcomes.get(outcomes_used).ok_or_else(|| {
                            Error::InvalidParameter(format!("no outcome recorded for fault {outcomes_used}"))
                        })?;
                        outcomes_used += 1;
                        let pos = s.position(e.qubit)?;
                        let p = s.state.outcome_probabilities(obs, &[pos])?[index];
                        if p <= 0.0 {
                            return Err(Error::InvalidParameter(format!(
                                "recorded outcome {index} at {e:?} has probability {p}"
                            )));
                        }
                        s.state = s.state.condition_on(obs, index, p, &[pos])?;
                    }
                }
            }
            observe(t, &s);
        }
        Ok(s)
    }

    /// The decohered medium with every fault site turned into a weak fault.
    pub fn evolve_exact(&self, medium: &Medium, channel: &FaultChannel, input: &[bool]) -> Result<DenseState> {
        self.drive(medium, input, FaultMode::Weak(channel, medium.eta), |_, _| {})
    }

    /// Like [`evolve_exact`](Self::evolve_exact), calling `observe` after each step.
    pub fn evolve_exact_observed(
        &self,
        medium: &Medium,
        channel: &FaultChannel,
        input: &[bool],
        observe: impl FnMut(usize, &DenseState),
    ) -> Result<DenseState> {
        self.drive(medium, input, FaultMode::Weak(channel, medium.eta), observe)
    }

    /// The trajectory endpoint with the channel applied exactly at the sites of `path`.
    pub fn evolve_by_path(
        &self,
        medium: &Medium,
        channel: &FaultChannel,
        path: &FaultPath,
        input: &[bool],
    ) -> Result<DenseState> {
        path.check_against(medium)?;
        self.drive(medium, input, FaultMode::Path(channel, path), |_, _| {})
    }

    /// A single collapse trajectory: at each site of `path` (in time, then
    /// qubit order) the state is projected onto eigenspace `outcomes[k]` of
    /// `obs` and renormalized. `observe` sees the state after every step.
    pub fn evolve_conditioned(
        &self,
        medium: &Medium,
        obs: &Observable,
        path: &FaultPath,
        outcomes: &[usize],
        input: &[bool],
        observe: impl FnMut(usize, &DenseState),
    ) -> Result<DenseState> {
        path.check_against(medium)?;
        self.drive(medium, input, FaultMode::Conditioned(obs, path, outcomes), observe)
    }

    /// `sum_sigma w(sigma) E^sigma(T)` over all fault paths.
    pub fn path_sum_exact(&self, medium: &Medium, channel: &FaultChannel, input: &[bool]) -> Result<DenseState> {
        self.prepare(medium, input)?;
        let sites = medium.fault_site_list();
        let v = sites.len();
        if v > self.enumeration_cap {
            return Err(Error::TooManyFaultSites {
                sites: v,
                cap: self.enumeration_cap,
            });
        }
        let eta = medium.eta;
        let weight = |k: usize| eta.powi(k as i32) * (1.0 - eta).powi((v - k) as i32);
        let path_of = |mask: u64| {
            let events: Vec<FaultEvent> = (0..v).filter(|i| mask >> i & 1 == 1).map(|i| sites[i]).collect();
            FaultPath::from_sorted(events)
        };
        let total = 1u64 << v;
        const CHUNK: u64 = 64;

        let mut acc: Option<DenseState> = None;
        // Fixed chunking and an ordered fold keep the sum independent of threads.
        let chunk_sums: Vec<Result<Option<DenseState>>> = (0..total.div_ceil(CHUNK))
            .into_par_iter()
            .map(|c| {
                let mut sum: Option<DenseState> = None;
                for mask in c * CHUNK..((c + 1) * CHUNK).min(total) {
                    let w = weight(mask.count_ones() as usize);
                    if w == 0.0 {
                        continue;
                    }
                    let e = self.drive(medium, input, FaultMode::Path(channel, &path_of(mask)), |_, _| {})?;
                    accumulate(&mut sum, e, w);
                }
                Ok(sum)
            })
            .collect();
        for part in chunk_sums {
            if let Some(p) = part? {
                accumulate(&mut acc, p, 1.0);
            }
        }
        acc.ok_or_else(|| Error::InvalidParameter("all fault paths have zero weight".into()))
    }

    /// Readout distribution of the result qubits (keys in `result_qubits` order).
    pub fn output_distribution_exact(
        &self,
        medium: &Medium,
        channel: &FaultChannel,
        input: &[bool],
    ) -> Result<BTreeMap<String, f64>> {
        self.evolve_exact(medium, channel, input)?
            .readout_distribution(&medium.result_qubits)
    }
}

fn accumulate(acc: &mut Option<DenseState>, e: DenseState, w: f64) {
    match acc {
        None => {
            let n = e.state.num_qubits();
            let m = e.state.into_matrix().scale(crate::qmath::C64::new(w, 0.0));
            *acc = Some(DenseState {
                qubits: e.qubits,
                state: DensityMatrix::from_parts_unchecked(n, m),
            });
        }
        Some(a) => {
            let n = a.state.num_qubits();
            let mut m: ComplexMatrix = std::mem::replace(&mut a.state, DensityMatrix::scalar_one()).into_matrix();
            m.axpy(w, e.state.matrix());
            a.state = DensityMatrix::from_parts_unchecked(n, m);
        }
    }
}

/// [`Oracle::evolve_exact`] with default caps.
pub fn evolve_exact(medium: &Medium, channel: &FaultChannel, input: &[bool]) -> Result<DenseState> {
    Oracle::default().evolve_exact(medium, channel, input)
}

/// [`Oracle::evolve_by_path`] with default caps.
pub fn evolve_by_path(medium: &Medium, channel: &FaultChannel, path: &FaultPath, input: &[bool]) -> Result<DenseState> {
    Oracle::default().evolve_by_path(medium, channel, path, input)
}

/// [`Oracle::path_sum_exact`] with default caps.
pub fn path_sum_exact(medium: &Medium, channel: &FaultChannel, input: &[bool]) -> Result<DenseState> {
    Oracle::default().path_sum_exact(medium, channel, input)
}

/// [`Oracle::output_distribution_exact`] with default caps.
pub fn output_distribution_exact(
    medium: &Medium,
    channel: &FaultChannel,
    input: &[bool],
) -> Result<BTreeMap<String, f64>> {
    Oracle::default().output_distribution_exact(medium, channel, input)
}

/// Total variation distance `1/2 sum |p - q|` over the union of keys.
pub fn total_variation(p: &BTreeMap<String, f64>, q: &BTreeMap<String, f64>) -> f64 {
    let mut d = 0.0;
    for (k, a) in p {
        d += (a - q.get(k).copied().unwrap_or(0.0)).abs();
    }
    for (k, b) in q {
        if !p.contains_key(k) {
            d += b.abs();
        }
    }
    d / 2.0
}
