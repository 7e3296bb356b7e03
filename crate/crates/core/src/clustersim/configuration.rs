use super::outcome::OutcomeChooser;
use crate::error::{Error, Result};
use crate::medium::{GateKind, GateSpec};
use crate::qmath::{DensityMatrix, Observable};

/// Tolerance on the sum of collapse outcome probabilities.
const DRIFT_TOLERANCE: f64 = 1e-9;

/// Qubits sharing one density matrix. Qubit ids are ascending and position
/// `i` of the matrix belongs to `qubits[i]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Cluster {
    qubits: Vec<usize>,
    state: DensityMatrix,
}

impl Cluster {
    pub fn qubits(&self) -> &[usize] {
        &self.qubits
    }

    pub fn state(&self) -> &DensityMatrix {
        &self.state
    }

    pub fn len(&self) -> usize {
        self.qubits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.qubits.is_empty()
    }

    fn position(&self, q: usize) -> usize {
        self.qubits.binary_search(&q).expect("qubit in its cluster")
    }
}

/// The factorized state: a partition of the live qubits into clusters whose
/// tensor product is the global density matrix.
#[derive(Clone, Debug, Default)]
pub struct Configuration {
    clusters: Vec<Cluster>,
    /// qubit id -> index into `clusters`
    locator: Vec<Option<usize>>,
}

impl Configuration {
    pub fn new() -> Self {
        Self::default()
    }

    /// One single-qubit cluster `|b><b|` per input bit, qubits numbered from 0.
    pub fn from_bits(bits: &[bool]) -> Self {
        let mut c = Self::new();
        for (q, &b) in bits.iter().enumerate() {
            c.insert(q, b).expect("fresh qubit");
        }
        c
    }

    /// Adds a live qubit as its own cluster in state `|bit><bit|`.
    pub fn insert(&mut self, qubit: usize, bit: bool) -> Result<()> {
        if self.is_live(qubit) {
            return Err(Error::InvalidParameter(format!("qubit {qubit} is already live")));
        }
        if self.locator.len() <= qubit {
            self.locator.resize(qubit + 1, None);
        }
        self.locator[qubit] = Some(self.clusters.len());
        self.clusters.push(Cluster {
            qubits: vec![qubit],
            state: DensityMatrix::basis_state(&[bit]),
        });
        Ok(())
    }

    /// Drops a qubit without observing it (partial trace over it).
    pub fn remove(&mut self, qubit: usize) -> Result<()> {
        let ci = self.cluster_index(qubit)?;
        self.locator[qubit] = None;
        let cluster = &mut self.clusters[ci];
        if cluster.len() == 1 {
            self.take_cluster(ci);
            return Ok(());
        }
        let pos = cluster.position(qubit);
        let keep: Vec<usize> = (0..cluster.len()).filter(|&p| p != pos).collect();
        cluster.state = cluster.state.reduce_unchecked(&keep);
        cluster.qubits.remove(pos);
        Ok(())
    }

    pub fn is_live(&self, qubit: usize) -> bool {
        self.locator.get(qubit).is_some_and(Option::is_some)
    }

    pub fn clusters(&self) -> &[Cluster] {
        &self.clusters
    }

    pub fn num_clusters(&self) -> usize {
        self.clusters.len()
    }

    pub fn cluster_of(&self, qubit: usize) -> Option<&Cluster> {
        self.locator
            .get(qubit)
            .copied()
            .flatten()
            .map(|i| &self.clusters[i])
    }

    pub fn live_qubits(&self) -> Vec<usize> {
        (0..self.locator.len()).filter(|&q| self.is_live(q)).collect()
    }

    pub fn num_live(&self) -> usize {
        self.clusters.iter().map(Cluster::len).sum()
    }

    /// Number of qubits in clusters of size at least two.
    pub fn non_individual(&self) -> usize {
        self.clusters.iter().map(Cluster::len).filter(|&k| k >= 2).sum()
    }

    pub fn max_cluster(&self) -> usize {
        self.clusters.iter().map(Cluster::len).max().unwrap_or(0)
    }

    /// Total matrix entries, `sum 4^k` over clusters.
    pub fn entries(&self) -> u64 {
        self.clusters.iter().map(|c| 1u64 << (2 * c.len())).sum()
    }

    fn cluster_index(&self, qubit: usize) -> Result<usize> {
        self.locator
            .get(qubit)
            .copied()
            .flatten()
            .ok_or(Error::QubitNotLive(qubit))
    }

    fn take_cluster(&mut self, ci: usize) -> Cluster {
        let c = self.clusters.swap_remove(ci);
        if ci < self.clusters.len() {
            for &q in &self.clusters[ci].qubits {
                self.locator[q] = Some(ci);
            }
        }
        c
    }

    fn push_cluster(&mut self, cluster: Cluster) -> usize {
        let ci = self.clusters.len();
        for &q in &cluster.qubits {
            self.locator[q] = Some(ci);
        }
        self.clusters.push(cluster);
        ci
    }

    /// Merges the clusters holding `qubits` into one cluster and returns its index.
    fn merge_for(&mut self, qubits: &[usize], cap: usize) -> Result<usize> {
        let mut indices: Vec<usize> = Vec::with_capacity(qubits.len());
        for &q in qubits {
            let ci = self.cluster_index(q)?;
            if !indices.contains(&ci) {
                indices.push(ci);
            }
        }
        if indices.len() == 1 {
            return Ok(indices[0]);
        }
        let size: usize = indices.iter().map(|&i| self.clusters[i].len()).sum();
        if size > cap {
            return Err(Error::ClusterCapExceeded { size, cap });
        }
        // remove from the back so earlier indices stay valid
        let mut order = indices.clone();
        order.sort_unstable_by(|a, b| b.cmp(a));
        let mut taken: Vec<(usize, Cluster)> = order.into_iter().map(|i| (i, self.take_cluster(i))).collect();
        taken.sort_unstable_by_key(|(i, _)| indices.iter().position(|x| x == i));

        let mut ids = Vec::with_capacity(size);
        let mut state = DensityMatrix::scalar_one();
        for (_, c) in taken {
            ids.extend_from_slice(&c.qubits);
            state = state.tensor(&c.state);
        }
        let mut order: Vec<usize> = (0..ids.len()).collect();
        order.sort_unstable_by_key(|&p| ids[p]);
        let state = state.permute(&order)?;
        ids.sort_unstable();
        Ok(self.push_cluster(Cluster { qubits: ids, state }))
    }

    /// Applies a gate: the clusters of its targets are merged (each used once)
    /// and the gate acts on the merged matrix.
    pub fn apply_gate(&mut self, gate: &GateSpec, cap: usize) -> Result<()> {
        let ci = self.merge_for(gate.targets(), cap)?;
        let cluster = &mut self.clusters[ci];
        let positions: Vec<usize> = gate.targets().iter().map(|&q| cluster.position(q)).collect();
        match gate.kind() {
            GateKind::Unitary => cluster.state.sandwich_in_place(gate.matrix(), &positions)?,
            GateKind::Measurement => {
                let obs = gate
                    .observable()
                    .ok_or_else(|| Error::UnsupportedObservable("measurement gate without spectrum".into()))?;
                cluster.state = cluster.state.measure_unconditioned(obs, &positions)?;
            }
        }
        Ok(())
    }

    /// Collapses `qubit` onto an eigenstate of `obs` drawn by `chooser`. The
    /// qubit becomes its own cluster; the rest of its old cluster keeps the
    /// conditioned, reduced state. Returns the outcome index.
    pub fn apply_collapse(
        &mut self,
        qubit: usize,
        obs: &Observable,
        chooser: &mut dyn OutcomeChooser,
    ) -> Result<usize> {
        if obs.num_qubits() != 1 || !obs.is_nondegenerate() {
            return Err(Error::UnsupportedObservable(
                "collapse needs a nondegenerate single-qubit observable".into(),
            ));
        }
        let ci = self.cluster_index(qubit)?;
        let cluster = &self.clusters[ci];
        let pos = cluster.position(qubit);
        let probs = cluster.state.outcome_probabilities(obs, &[pos])?;
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > DRIFT_TOLERANCE {
            return Err(Error::ProbabilityDrift(total));
        }
        let outcome = chooser.choose(&probs);
        let eigenstate = DensityMatrix::from_parts_unchecked(1, obs.eigenspaces()[outcome].projector.clone());

        if cluster.len() == 1 {
            self.clusters[ci].state = eigenstate;
            return Ok(outcome);
        }
        let conditioned = cluster.state.condition_on(obs, outcome, probs[outcome], &[pos])?;
        let rest: Vec<usize> = (0..cluster.len()).filter(|&p| p != pos).collect();
        let rest_state = conditioned.reduce_unchecked(&rest);
        let cluster = &mut self.clusters[ci];
        cluster.qubits.remove(pos);
        cluster.state = rest_state;
        self.push_cluster(Cluster {
            qubits: vec![qubit],
            state: eigenstate,
        });
        Ok(outcome)
    }

    /// Tensor product of all clusters with qubits in ascending id order.
    pub fn global_state(&self) -> (Vec<usize>, DensityMatrix) {
        let mut ids = Vec::new();
        let mut state = DensityMatrix::scalar_one();
        for c in &self.clusters {
            ids.extend_from_slice(&c.qubits);
            state = state.tensor(&c.state);
        }
        let mut order: Vec<usize> = (0..ids.len()).collect();
        order.sort_unstable_by_key(|&p| ids[p]);
        let state = state.permute(&order).expect("valid permutation");
        ids.sort_unstable();
        (ids, state)
    }

    /// Checks that clusters partition the live qubits and the locator agrees.
    pub fn audit(&self) -> std::result::Result<(), String> {
        let mut seen = vec![false; self.locator.len()];
        for (ci, c) in self.clusters.iter().enumerate() {
            if c.is_empty() {
                return Err(format!("cluster {ci} is empty"));
            }
            if c.state.num_qubits() != c.len() {
                return Err(format!("cluster {ci}: matrix over {} qubits, {} listed", c.state.num_qubits(), c.len()));
            }
            if c.qubits.windows(2).any(|w| w[0] >= w[1]) {
                return Err(format!("cluster {ci}: qubits not strictly ascending"));
            }
            for &q in &c.qubits {
                if q >= seen.len() || seen[q] {
                    return Err(format!("qubit {q} appears twice or is unknown"));
                }
                seen[q] = true;
                if self.locator[q] != Some(ci) {
                    return Err(format!("locator for qubit {q} is {:?}, expected {ci}", self.locator[q]));
                }
            }
        }
        for (q, (&s, l)) in seen.iter().zip(&self.locator).enumerate() {
            if !s && l.is_some() {
                return Err(format!("locator lists qubit {q} but no cluster holds it"));
            }
        }
        Ok(())
    }
}
