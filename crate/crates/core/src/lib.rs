//! Simulation of quantum circuits subjected to single-qubit collapse faults.
//!
//! * [`qmath`]: dense density-matrix calculus.
//! * [`medium`]: timed circuits, fault sites, fault paths and circuit generators.
//! * [`clustersim`]: Monte Carlo simulation on a factorized (clustered) state.
//! * [`oracle`]: exact dense evolution used as ground truth.
//! * [`phaselab`]: matrix-free cluster dynamics and branching-process checks.

pub mod clustersim;
pub mod error;
pub mod medium;
pub mod oracle;
pub mod phaselab;
pub mod qmath;

pub use error::{Error, Result};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generator for trial `trial` of a run seeded with `seed`: one ChaCha
/// stream per trial, so trials can run in any order or in parallel.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}
