//! Matrix-free cluster dynamics: clusters are merged along matchings and
//! qubits are cut out of them at random, tracking only cluster membership.
//! Also hosts the mean-field growth picture and the branching-process tail check.

mod branching;
mod dynamics;
mod meanfield;
mod partition;

pub use branching::{branching_tail_check, BranchingConfig, BranchingReport, Offspring, TailRow};
pub use dynamics::{
    eta_grid, run_dynamics, scan_transition, DynamicsConfig, Phase, PhaseScanReport, ScanConfig, ScanPoint, Topology,
    Trajectory, DEFAULT_THRESHOLD,
};
pub use meanfield::{effective_rate, growth_factor, mean_field_fixed_point, simulate_growth, GrowthCheck};
pub use partition::{decohere_step, matching_step_1d, matching_step_random, ClusterPartition};
