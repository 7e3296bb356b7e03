//! One-step mean-field picture of a giant cluster. Here `s` is the per-step
//! survival probability of a qubit in its cluster, i.e. one minus the
//! decoherence rate.

use rayon::prelude::*;
use serde::Serialize;

use super::partition::{decohere_step, matching_step_random, ClusterPartition};
use crate::error::{Error, Result};
use crate::trial_rng;

/// Fixed point `2 - 1/s` of the giant-cluster fraction.
pub fn mean_field_fixed_point(s: f64) -> Result<f64> {
    if !(s > 0.5 && s <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "survival {s} outside (0.5, 1]: the fixed point is not positive"
        )));
    }
    Ok(2.0 - 1.0 / s)
}

/// Per-step growth `(2 - alpha) s` of a cluster holding fraction `alpha`.
pub fn growth_factor(alpha: f64, s: f64) -> f64 {
    (2.0 - alpha) * s
}

/// Decoherence accumulated over `nu` steps: `1 - (1 - eta)^nu`.
pub fn effective_rate(eta: f64, nu: u32) -> f64 {
    1.0 - (1.0 - eta).powi(nu as i32)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthCheck {
    pub n: usize,
    pub alpha: f64,
    pub survival: f64,
    pub repetitions: usize,
    /// Mean of `new size / old size`.
    pub mean_factor: f64,
    pub standard_error: f64,
    pub predicted: f64,
    /// `|mean - predicted| <= 3 standard errors`.
    pub within_three_sigma: bool,
}

/// Seeds one cluster of `round(alpha n)` sites among singletons, runs one
/// random matching and one decoherence step with rate `1 - s`, and measures
/// the size of what remains of the seeded cluster.
pub fn simulate_growth(n: usize, alpha: f64, s: f64, repetitions: usize, seed: u64) -> Result<GrowthCheck> {
    if !(0.0..=1.0).contains(&alpha) || !(0.0..=1.0).contains(&s) {
        return Err(Error::InvalidParameter(format!("alpha {alpha} or survival {s} outside [0, 1]")));
    }
    let k = (alpha * n as f64).round() as usize;
    if k == 0 || repetitions < 2 {
        return Err(Error::InvalidParameter("seeded cluster and repetition count must be nonzero".into()));
    }
    let factors: Vec<f64> = (0..repetitions as u64)
        .into_par_iter()
        .map(|rep| {
            let mut rng = trial_rng(seed, rep);
            let mut p = ClusterPartition::new(n);
            for i in 1..k {
                p.union(0, i);
            }
            matching_step_random(&mut p, &mut Vec::new(), &mut rng);
            let root = p.find(0);
            let members: Vec<usize> = (0..n).filter(|&i| p.find(i) == root).collect();
            let mut mask = Vec::new();
            decohere_step(&mut p, 1.0 - s, &mut mask, &mut rng);
            let size = members
                .iter()
                .find(|&&i| !mask[i])
                .map_or(0, |&i| p.size_of(i));
            size as f64 / k as f64
        })
        .collect();
    let r = repetitions as f64;
    let mean = factors.iter().sum::<f64>() / r;
    let var = factors.iter().map(|f| (f - mean).powi(2)).sum::<f64>() / (r - 1.0);
    let standard_error = (var / r).sqrt();
    let predicted = growth_factor(k as f64 / n as f64, s);
    Ok(GrowthCheck {
        n,
        alpha,
        survival: s,
        repetitions,
        mean_factor: mean,
        standard_error,
        predicted,
        within_three_sigma: (mean - predicted).abs() <= 3.0 * standard_error,
    })
}
