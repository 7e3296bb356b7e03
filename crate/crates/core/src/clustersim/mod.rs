//! Monte Carlo simulation with the density matrix kept as a product of
//! per-cluster matrices. Gates merge the clusters of their targets; a
//! collapse fault cuts the faulty qubit out of its cluster.

mod configuration;
mod outcome;
mod sampling;
mod trial;

pub use configuration::{Cluster, Configuration};
pub use outcome::{OutcomeChooser, RecordingChooser, RngChooser, ScriptedChooser};
pub use sampling::{bit_string, sample_output_distribution, CostSummary, SampleReport, SamplingOptions};
pub use trial::{run_trial, run_with_path, CostStats, StepStats, TrialOptions, TrialRunner, DEFAULT_CLUSTER_CAP};
