//! Timed quantum circuits subjected to single-qubit faults.
//!
//! A [`Medium`] is a circuit together with a timing and a decoherence rate.
//! Qubit `q` is alive on the inclusive step range `lifetimes[q] = (t1, t2)`
//! and every live `(qubit, step)` pair is a fault site. Within a step the
//! simulators apply, in order: removal of qubits that died at the previous
//! step, preparation of qubits born at this step, the gates of the step,
//! and finally the faults of the step.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qmath::{ComplexMatrix, Observable, TOLERANCE};

pub mod fixtures;
pub mod generators;
mod io;

pub use io::CircuitDocument;

/// Default largest gate order accepted by [`Medium::validate`].
pub const DEFAULT_MAX_FAN_IN: usize = 2;

/// Default cap on the number of fault sites for path enumeration.
pub const DEFAULT_ENUMERATION_CAP: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GateKind {
    Unitary,
    Measurement,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GateSpec {
    kind: GateKind,
    matrix: ComplexMatrix,
    targets: Vec<usize>,
    time: usize,
    observable: Option<Observable>,
}

impl GateSpec {
    pub fn unitary(matrix: ComplexMatrix, targets: Vec<usize>, time: usize) -> Self {
        Self {
            kind: GateKind::Unitary,
            matrix,
            targets,
            time,
            observable: None,
        }
    }

    /// An unconditioned measurement gate. A matrix that cannot be decomposed
    /// is kept and reported by [`Medium::validate`].
    pub fn measurement(matrix: ComplexMatrix, targets: Vec<usize>, time: usize) -> Self {
        let observable = Observable::new(matrix.clone()).ok();
        Self {
            kind: GateKind::Measurement,
            matrix,
            targets,
            time,
            observable,
        }
    }

    pub fn new(kind: GateKind, matrix: ComplexMatrix, targets: Vec<usize>, time: usize) -> Self {
        match kind {
            GateKind::Unitary => Self::unitary(matrix, targets, time),
            GateKind::Measurement => Self::measurement(matrix, targets, time),
        }
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    pub fn time(&self) -> usize {
        self.time
    }

    /// Spectral decomposition of a measurement gate.
    pub fn observable(&self) -> Option<&Observable> {
        self.observable.as_ref()
    }

    pub fn with_time(mut self, time: usize) -> Self {
        self.time = time;
        self
    }

    pub fn with_targets(mut self, targets: Vec<usize>) -> Self {
        self.targets = targets;
        self
    }
}

/// The collapse basis of a fault: a nondegenerate single-qubit observable.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FaultSpec {
    pub observable: Observable,
}

impl FaultSpec {
    pub fn new(observable: Observable) -> Result<Self> {
        if observable.num_qubits() != 1 || !observable.is_nondegenerate() {
            return Err(Error::UnsupportedObservable(
                "collapse faults need a nondegenerate single-qubit observable".into(),
            ));
        }
        Ok(Self { observable })
    }

    pub fn z() -> Self {
        Self {
            observable: Observable::pauli_z(),
        }
    }

    pub fn x() -> Self {
        Self {
            observable: Observable::pauli_x(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Medium {
    pub n: usize,
    pub lifetimes: Vec<(usize, usize)>,
    pub gates: Vec<GateSpec>,
    pub eta: f64,
    pub result_qubits: Vec<usize>,
}

/// A broken medium invariant.
#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    LifetimeCount { expected: usize, got: usize },
    BadLifetime { qubit: usize, birth: usize, death: usize },
    NotStartingAtZero { earliest: usize },
    EtaOutOfRange(f64),
    ResultQubitOutOfRange { qubit: usize },
    DuplicateResultQubit { qubit: usize },
    TargetOutOfRange { gate: usize, qubit: usize },
    DuplicateTarget { gate: usize, qubit: usize },
    FanInExceeded { gate: usize, order: usize, cap: usize },
    MatrixShape { gate: usize },
    NotUnitary { gate: usize, deviation: f64 },
    NotHermitian { gate: usize, deviation: f64 },
    UnsupportedMeasurement { gate: usize },
    TargetNotAlive { gate: usize, qubit: usize, time: usize },
    TimeCollision { time: usize, qubit: usize, gates: (usize, usize) },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::LifetimeCount { expected, got } => {
                write!(f, "lifetime count: {got} lifetimes for {expected} qubits")
            }
            Violation::BadLifetime { qubit, birth, death } => {
                write!(f, "bad lifetime: qubit {qubit} born at {birth} dies at {death}")
            }
            Violation::NotStartingAtZero { earliest } => {
                write!(f, "timing must start at 0: earliest birth is {earliest}")
            }
            Violation::EtaOutOfRange(eta) => write!(f, "eta out of range: {eta}"),
            Violation::ResultQubitOutOfRange { qubit } => {
                write!(f, "result qubit {qubit} out of range")
            }
            Violation::DuplicateResultQubit { qubit } => {
                write!(f, "result qubit {qubit} listed twice")
            }
            Violation::TargetOutOfRange { gate, qubit } => {
                write!(f, "gate {gate}: target {qubit} out of range")
            }
            Violation::DuplicateTarget { gate, qubit } => {
                write!(f, "gate {gate}: target {qubit} repeated")
            }
            Violation::FanInExceeded { gate, order, cap } => {
                write!(f, "gate {gate}: fan-in {order} exceeds {cap}")
            }
            Violation::MatrixShape { gate } => {
                write!(f, "gate {gate}: matrix size does not match its targets")
            }
            Violation::NotUnitary { gate, deviation } => {
                write!(f, "gate {gate}: matrix not unitary (deviation {deviation:.3e})")
            }
            Violation::NotHermitian { gate, deviation } => {
                write!(f, "gate {gate}: measurement matrix not hermitian (deviation {deviation:.3e})")
            }
            Violation::UnsupportedMeasurement { gate } => {
                write!(f, "gate {gate}: measurement observable cannot be decomposed")
            }
            Violation::TargetNotAlive { gate, qubit, time } => {
                write!(f, "target not alive: gate {gate} at time {time} acts on qubit {qubit}")
            }
            Violation::TimeCollision { time, qubit, gates } => write!(
                f,
                "time collision: gates {} and {} both act on qubit {qubit} at time {time}",
                gates.0, gates.1
            ),
        }
    }
}

/// One `(qubit, step)` fault event.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FaultEvent {
    // field order gives (time, qubit) ordering
    pub time: usize,
    pub qubit: usize,
}

/// A set of distinct fault events, kept sorted by `(time, qubit)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FaultPath {
    events: Vec<FaultEvent>,
}

impl FaultPath {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a path from `(qubit, time)` pairs; repeated pairs are rejected.
    pub fn new(pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut events: Vec<FaultEvent> = pairs
            .into_iter()
            .map(|(qubit, time)| FaultEvent { time, qubit })
            .collect();
        events.sort_unstable();
        if let Some(w) = events.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidFaultPath(format!(
                "pair (qubit {}, time {}) repeated",
                w[0].qubit, w[0].time
            )));
        }
        Ok(Self { events })
    }

    pub(crate) fn from_sorted(events: Vec<FaultEvent>) -> Self {
        debug_assert!(events.windows(2).all(|w| w[0] < w[1]));
        Self { events }
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn events(&self) -> &[FaultEvent] {
        &self.events
    }

    pub fn contains(&self, qubit: usize, time: usize) -> bool {
        self.events.binary_search(&FaultEvent { time, qubit }).is_ok()
    }

    /// Events at step `t`, ordered by qubit.
    pub fn at_time(&self, t: usize) -> &[FaultEvent] {
        let lo = self.events.partition_point(|e| e.time < t);
        let hi = self.events.partition_point(|e| e.time <= t);
        &self.events[lo..hi]
    }

    /// Checks every event against the medium's lifetimes.
    pub fn check_against(&self, medium: &Medium) -> Result<()> {
        for e in &self.events {
            let alive = medium
                .lifetimes
                .get(e.qubit)
                .is_some_and(|&(b, d)| b <= e.time && e.time <= d);
            if !alive {
                return Err(Error::InvalidFaultPath(format!(
                    "qubit {} is not alive at time {}",
                    e.qubit, e.time
                )));
            }
        }
        Ok(())
    }
}

/// Per-step plan shared by the simulators.
#[derive(Clone, Debug, Default)]
pub struct StepPlan {
    /// Non-result qubits whose last live step was the previous one.
    pub deaths: Vec<usize>,
    /// Qubits born at this step (empty at step 0; see [`Schedule::initial`]).
    pub births: Vec<usize>,
    /// Indices into [`Medium::gates`].
    pub gates: Vec<usize>,
    /// Qubits live at this step, ascending; the fault sites of the step.
    pub live: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Schedule {
    /// Qubits born at step 0, ascending.
    pub initial: Vec<usize>,
    pub steps: Vec<StepPlan>,
}

impl Medium {
    /// Largest step index `T`, or `None` for an empty medium.
    pub fn horizon(&self) -> Option<usize> {
        self.lifetimes.iter().map(|&(_, d)| d).max()
    }

    pub fn num_steps(&self) -> usize {
        self.horizon().map_or(0, |t| t + 1)
    }

    /// Number of fault sites `V`, both lifetime endpoints included.
    pub fn fault_sites(&self) -> usize {
        self.lifetimes
            .iter()
            .map(|&(b, d)| d.saturating_sub(b) + usize::from(d >= b))
            .sum()
    }

    /// All fault sites, ordered by `(time, qubit)`.
    pub fn fault_site_list(&self) -> Vec<FaultEvent> {
        let mut v: Vec<FaultEvent> = self
            .lifetimes
            .iter()
            .enumerate()
            .flat_map(|(qubit, &(b, d))| (b..=d).map(move |time| FaultEvent { time, qubit }))
            .collect();
        v.sort_unstable();
        v
    }

    pub fn validate(&self) -> Vec<Violation> {
        self.validate_with_fan_in(DEFAULT_MAX_FAN_IN)
    }

    pub fn validate_with_fan_in(&self, max_fan_in: usize) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.lifetimes.len() != self.n {
            out.push(Violation::LifetimeCount {
                expected: self.n,
                got: self.lifetimes.len(),
            });
        }
        for (qubit, &(birth, death)) in self.lifetimes.iter().enumerate() {
            if birth > death {
                out.push(Violation::BadLifetime { qubit, birth, death });
            }
        }
        if let Some(earliest) = self.lifetimes.iter().map(|&(b, _)| b).min() {
            if earliest != 0 {
                out.push(Violation::NotStartingAtZero { earliest });
            }
        }
        if !(0.0..=1.0).contains(&self.eta) {
            out.push(Violation::EtaOutOfRange(self.eta));
        }
        for (i, &qubit) in self.result_qubits.iter().enumerate() {
            if qubit >= self.n {
                out.push(Violation::ResultQubitOutOfRange { qubit });
            } else if self.result_qubits[..i].contains(&qubit) {
                out.push(Violation::DuplicateResultQubit { qubit });
            }
        }

        let mut last_use: std::collections::HashMap<(usize, usize), usize> = Default::default();
        for (gi, g) in self.gates.iter().enumerate() {
            let order = g.targets.len();
            if order > max_fan_in {
                out.push(Violation::FanInExceeded {
                    gate: gi,
                    order,
                    cap: max_fan_in,
                });
            }
            if order == 0 || g.matrix.qubit_order() != Some(order) {
                out.push(Violation::MatrixShape { gate: gi });
            } else {
                match g.kind {
                    GateKind::Unitary => {
                        let deviation = g.matrix.unitary_deviation();
                        if deviation > TOLERANCE {
                            out.push(Violation::NotUnitary { gate: gi, deviation });
                        }
                    }
                    GateKind::Measurement => {
                        let deviation = g.matrix.hermitian_deviation();
                        if deviation > TOLERANCE {
                            out.push(Violation::NotHermitian { gate: gi, deviation });
                        } else if g.observable.is_none() {
                            out.push(Violation::UnsupportedMeasurement { gate: gi });
                        }
                    }
                }
            }
            for (j, &qubit) in g.targets.iter().enumerate() {
                if qubit >= self.n || qubit >= self.lifetimes.len() {
                    out.push(Violation::TargetOutOfRange { gate: gi, qubit });
                    continue;
                }
                if g.targets[..j].contains(&qubit) {
                    out.push(Violation::DuplicateTarget { gate: gi, qubit });
                    continue;
                }
                let (b, d) = self.lifetimes[qubit];
                if g.time < b || g.time > d {
                    out.push(Violation::TargetNotAlive {
                        gate: gi,
                        qubit,
                        time: g.time,
                    });
                }
                if let Some(&other) = last_use.get(&(qubit, g.time)) {
                    out.push(Violation::TimeCollision {
                        time: g.time,
                        qubit,
                        gates: (other, gi),
                    });
                } else {
                    last_use.insert((qubit, g.time), gi);
                }
            }
        }
        out
    }

    pub fn check(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidMedium(v))
        }
    }

    pub fn with_eta(mut self, eta: f64) -> Self {
        self.eta = eta;
        self
    }

    pub fn is_result(&self, qubit: usize) -> bool {
        self.result_qubits.contains(&qubit)
    }

    /// Step-by-step plan; assumes a valid medium.
    pub fn schedule(&self) -> Schedule {
        let steps_n = self.num_steps();
        let mut steps = vec![StepPlan::default(); steps_n];
        let mut initial = Vec::new();
        for (q, &(b, d)) in self.lifetimes.iter().enumerate() {
            if b == 0 {
                initial.push(q);
            } else {
                steps[b].births.push(q);
            }
            for step in &mut steps[b..=d] {
                step.live.push(q);
            }
            if d + 1 < steps_n && !self.is_result(q) {
                steps[d + 1].deaths.push(q);
            }
        }
        for (gi, g) in self.gates.iter().enumerate() {
            steps[g.time].gates.push(gi);
        }
        Schedule { initial, steps }
    }

    /// Inputs carry one bit per qubit; qubits born after step 0 take their bit at birth.
    pub(crate) fn check_input(&self, input: &[bool]) -> Result<()> {
        if input.len() != self.n {
            return Err(Error::InputLength {
                got: input.len(),
                expected: self.n,
            });
        }
        Ok(())
    }
}

/// `w(sigma) = eta^|sigma| (1 - eta)^(V - |sigma|)`.
pub fn path_weight(medium: &Medium, sigma: &FaultPath) -> Result<f64> {
    sigma.check_against(medium)?;
    Ok(weight_of(medium.eta, sigma.len(), medium.fault_sites()))
}

pub(crate) fn weight_of(eta: f64, faults: usize, sites: usize) -> f64 {
    eta.powi(faults as i32) * (1.0 - eta).powi((sites - faults) as i32)
}

/// Includes each fault site independently with probability `eta`.
pub fn sample_fault_path<R: Rng + ?Sized>(medium: &Medium, rng: &mut R) -> FaultPath {
    let eta = medium.eta;
    let events = medium
        .fault_site_list()
        .into_iter()
        .filter(|_| rng.random::<f64>() < eta)
        .collect();
    FaultPath::from_sorted(events)
}

/// All `2^V` fault paths with their weights.
pub fn enumerate_fault_paths(medium: &Medium, cap: usize) -> Result<Vec<(FaultPath, f64)>> {
    let sites = medium.fault_site_list();
    let v = sites.len();
    if v > cap {
        return Err(Error::TooManyFaultSites { sites: v, cap });
    }
    Ok((0u64..1 << v)
        .map(|mask| {
            let events: Vec<FaultEvent> = sites
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let w = weight_of(medium.eta, events.len(), v);
            (FaultPath::from_sorted(events), w)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmath::gates;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn bare(lifetimes: Vec<(usize, usize)>, eta: f64) -> Medium {
        Medium {
            n: lifetimes.len(),
            result_qubits: (0..lifetimes.len()).collect(),
            lifetimes,
            gates: vec![],
            eta,
        }
    }

    #[test]
    fn empty_single_qubit_is_valid() {
        assert!(bare(vec![(0, 0)], 0.1).validate().is_empty());
    }

    #[test]
    fn time_collision_is_reported() {
        let mut m = bare(vec![(0, 3)], 0.1);
        m.gates.push(GateSpec::unitary(gates::hadamard(), vec![0], 1));
        m.gates.push(GateSpec::unitary(gates::pauli_x(), vec![0], 1));
        let v = m.validate();
        assert_eq!(v.len(), 1);
        assert!(v[0].to_string().starts_with("time collision"));
    }

    #[test]
    fn dead_target_is_reported() {
        let mut m = bare(vec![(0, 3)], 0.1);
        m.gates.push(GateSpec::unitary(gates::hadamard(), vec![0], 5));
        let v = m.validate();
        assert_eq!(v.len(), 1);
        assert!(v[0].to_string().starts_with("target not alive"));
    }

    #[test]
    fn structural_violations() {
        let mut m = bare(vec![(1, 0)], 1.5);
        m.result_qubits = vec![0, 0, 4];
        m.gates.push(GateSpec::unitary(gates::cnot(), vec![0], 0));
        m.gates.push(GateSpec::unitary(gates::hadamard().scale(crate::qmath::C64::new(2.0, 0.0)), vec![0], 0));
        m.gates.push(GateSpec::measurement(gates::pauli_x().kron(&gates::pauli_x()), vec![0, 0], 0));
        let v = m.validate();
        let has = |f: fn(&Violation) -> bool| v.iter().any(f);
        assert!(has(|x| matches!(x, Violation::BadLifetime { .. })));
        assert!(has(|x| matches!(x, Violation::NotStartingAtZero { .. })));
        assert!(has(|x| matches!(x, Violation::EtaOutOfRange(_))));
        assert!(has(|x| matches!(x, Violation::DuplicateResultQubit { .. })));
        assert!(has(|x| matches!(x, Violation::ResultQubitOutOfRange { .. })));
        assert!(has(|x| matches!(x, Violation::MatrixShape { gate: 0 })));
        assert!(has(|x| matches!(x, Violation::NotUnitary { gate: 1, .. })));
        assert!(has(|x| matches!(x, Violation::UnsupportedMeasurement { gate: 2 })));
        assert!(has(|x| matches!(x, Violation::DuplicateTarget { gate: 2, .. })));
    }

    #[test]
    fn fan_in_cap() {
        let mut m = bare(vec![(0, 0); 3], 0.0);
        let toffoli_like = crate::qmath::ComplexMatrix::identity(8);
        m.gates.push(GateSpec::unitary(toffoli_like, vec![0, 1, 2], 0));
        assert!(matches!(m.validate()[0], Violation::FanInExceeded { order: 3, .. }));
        assert!(m.validate_with_fan_in(3).is_empty());
    }

    #[test]
    fn fault_site_counts() {
        assert_eq!(bare(vec![(0, 3)], 0.1).fault_sites(), 4);
        let t = 7;
        assert_eq!(bare(vec![(0, t); 3], 0.1).fault_sites(), 3 * (t + 1));
        assert_eq!(bare(vec![(0, 2), (1, 3)], 0.1).fault_sites(), 6);
        assert_eq!(bare(vec![(0, 2), (1, 3)], 0.1).fault_site_list().len(), 6);
    }

    #[test]
    fn weights() {
        let m = bare(vec![(0, 3)], 0.0);
        assert_eq!(path_weight(&m, &FaultPath::empty()).unwrap(), 1.0);
        assert_eq!(path_weight(&m, &FaultPath::new([(0, 1)]).unwrap()).unwrap(), 0.0);
        let m = bare(vec![(0, 3)], 1.0);
        let all = FaultPath::new((0..4).map(|t| (0, t))).unwrap();
        assert_eq!(path_weight(&m, &all).unwrap(), 1.0);
        let m = bare(vec![(0, 3)], 0.5);
        assert_eq!(path_weight(&m, &FaultPath::new([(0, 0), (0, 2)]).unwrap()).unwrap(), 0.0625);
        assert!(path_weight(&m, &FaultPath::new([(0, 4)]).unwrap()).is_err());
        assert!(path_weight(&m, &FaultPath::new([(1, 0)]).unwrap()).is_err());
    }

    #[test]
    fn fault_path_rejects_duplicates_and_slices_by_time() {
        assert!(FaultPath::new([(0, 1), (0, 1)]).is_err());
        let p = FaultPath::new([(2, 1), (0, 3), (1, 1), (0, 0)]).unwrap();
        let at1: Vec<usize> = p.at_time(1).iter().map(|e| e.qubit).collect();
        assert_eq!(at1, vec![1, 2]);
        assert!(p.at_time(2).is_empty());
        assert!(p.contains(0, 3));
    }

    #[test]
    fn sampling_extremes() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let m = bare(vec![(0, 4), (0, 4)], 0.0);
        assert!((0..100).all(|_| sample_fault_path(&m, &mut rng).is_empty()));
        let m = m.with_eta(1.0);
        assert!((0..100).all(|_| sample_fault_path(&m, &mut rng).len() == 10));
    }

    #[test]
    fn sampling_mean_matches_binomial() {
        // mean |sigma| = eta V = 3.0; sd of the mean = sqrt(V eta (1-eta) / N) ~ 0.0046
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let m = bare(vec![(0, 4), (0, 4)], 0.3);
        let n = 100_000;
        let total: usize = (0..n).map(|_| sample_fault_path(&m, &mut rng).len()).sum();
        let mean = total as f64 / n as f64;
        assert!((mean - 3.0).abs() < 0.05, "mean {mean}");
    }

    #[test]
    fn enumeration() {
        let m = bare(vec![], 0.3);
        let all = enumerate_fault_paths(&m, 20).unwrap();
        assert_eq!(all, vec![(FaultPath::empty(), 1.0)]);
        let m = bare(vec![(0, 1)], 0.5);
        let all = enumerate_fault_paths(&m, 20).unwrap();
        assert_eq!(all.len(), 4);
        assert!(all.iter().all(|(_, w)| *w == 0.25));
        let m = bare(vec![(0, 20)], 0.5);
        assert!(matches!(enumerate_fault_paths(&m, 20), Err(Error::TooManyFaultSites { sites: 21, cap: 20 })));
    }

    #[test]
    fn schedule_orders_births_and_deaths() {
        let mut m = bare(vec![(0, 3), (1, 3), (0, 1)], 0.0);
        m.result_qubits = vec![0, 1];
        let s = m.schedule();
        assert_eq!(s.initial, vec![0, 2]);
        assert_eq!(s.steps.len(), 4);
        assert_eq!(s.steps[1].births, vec![1]);
        assert_eq!(s.steps[2].deaths, vec![2]);
        assert_eq!(s.steps[1].live, vec![0, 1, 2]);
        assert_eq!(s.steps[2].live, vec![0, 1]);
    }

    #[test]
    fn fault_spec_requires_nondegenerate() {
        let id = Observable::new(crate::qmath::ComplexMatrix::identity(2)).unwrap();
        assert!(FaultSpec::new(id).is_err());
        assert!(FaultSpec::new(Observable::pauli_y()).is_ok());
    }
}
