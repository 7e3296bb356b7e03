//! Galton–Watson trees bounding how far one parallel gate layer can grow a
//! cluster. For two independent trees of sizes `T_a`, `T_b` the quantity
//! `L = 2 T_a + 2 T_b - 2` has `Pr(L = i) <= a (sqrt 2 - 1)^2 (sqrt(8 / a))^i`
//! whenever the offspring law satisfies `Pr(z = j) <= a^-j`.

use std::collections::BTreeMap;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;
use rand_distr::Geometric;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::trial_rng;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Offspring {
    /// `Pr(z = j) = (1 - 1/a) a^-j`.
    Geometric,
    /// Explicit `Pr(z = j)` for `j = 0, 1, ...`.
    Pmf(Vec<f64>),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BranchingConfig {
    pub a: f64,
    pub offspring: Offspring,
    /// Trees with more nodes than this are counted as overflow.
    pub tree_cap: usize,
}

impl BranchingConfig {
    pub fn geometric(a: f64) -> Self {
        Self {
            a,
            offspring: Offspring::Geometric,
            tree_cap: 1 << 20,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a > 8.0) {
            return Err(Error::InvalidParameter(format!("tail base a = {} must exceed 8", self.a)));
        }
        if let Offspring::Pmf(p) = &self.offspring {
            if p.is_empty() || p.iter().any(|&x| !(x >= 0.0)) {
                return Err(Error::InvalidParameter("offspring pmf must be nonempty and nonnegative".into()));
            }
            let total: f64 = p.iter().sum();
            if (total - 1.0).abs() > 1e-9 {
                return Err(Error::InvalidParameter(format!("offspring pmf sums to {total}")));
            }
            for (j, &x) in p.iter().enumerate() {
                if x > self.a.powi(-(j as i32)) + 1e-15 {
                    return Err(Error::InvalidParameter(format!(
                        "Pr(z = {j}) = {x} exceeds a^-{j}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// `Pr(L = i)` upper bound.
    pub fn bound(&self, i: usize) -> f64 {
        let c = (2f64.sqrt() - 1.0).powi(2);
        self.a * c * (8.0 / self.a).sqrt().powi(i as i32)
    }
}

enum Sampler {
    Geometric(Geometric),
    Weighted(WeightedIndex<f64>),
}

impl Sampler {
    fn new(cfg: &BranchingConfig) -> Self {
        match &cfg.offspring {
            Offspring::Geometric => Sampler::Geometric(Geometric::new(1.0 - 1.0 / cfg.a).expect("0 < p < 1")),
            Offspring::Pmf(p) => Sampler::Weighted(WeightedIndex::new(p).expect("validated pmf")),
        }
    }

    fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        match self {
            Sampler::Geometric(g) => g.sample(rng) as usize,
            Sampler::Weighted(w) => w.sample(rng),
        }
    }
}

/// Total progeny of one tree, or `None` past `cap` nodes.
fn tree_size<R: Rng + ?Sized>(sampler: &Sampler, cap: usize, rng: &mut R) -> Option<usize> {
    let mut size = 1usize;
    let mut pending = 1usize;
    while pending > 0 {
        pending -= 1;
        let z = sampler.draw(rng);
        size += z;
        pending += z;
        if size > cap {
            return None;
        }
    }
    Some(size)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TailRow {
    pub i: usize,
    pub count: u64,
    pub empirical: f64,
    pub bound: f64,
    pub standard_error: f64,
    pub violated: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BranchingReport {
    pub a: f64,
    pub samples: u64,
    /// Samples in which a tree exceeded the cap.
    pub overflow: u64,
    pub rows: Vec<TailRow>,
    pub violations: usize,
}

/// Minimum observations of a value of `L` before it can be flagged.
const MIN_COUNT: u64 = 100;
const BLOCK: u64 = 1 << 16;

/// Samples `L` from pairs of independent trees and compares its empirical
/// distribution against the bound. A value is flagged when it was seen at
/// least 100 times and its frequency exceeds the bound by more than three
/// binomial standard errors.
pub fn branching_tail_check(cfg: &BranchingConfig, samples: u64, seed: u64) -> Result<BranchingReport> {
    cfg.validate()?;
    if samples == 0 {
        return Err(Error::InvalidParameter("samples must be at least 1".into()));
    }
    let sampler = Sampler::new(cfg);
    let blocks: Vec<(BTreeMap<usize, u64>, u64)> = (0..samples.div_ceil(BLOCK))
        .into_par_iter()
        .map(|b| {
            let mut rng = trial_rng(seed, b);
            let mut hist = BTreeMap::new();
            let mut overflow = 0;
            for _ in b * BLOCK..((b + 1) * BLOCK).min(samples) {
                match (tree_size(&sampler, cfg.tree_cap, &mut rng), tree_size(&sampler, cfg.tree_cap, &mut rng)) {
                    (Some(ta), Some(tb)) => *hist.entry(2 * ta + 2 * tb - 2).or_insert(0) += 1,
                    _ => overflow += 1,
                }
            }
            (hist, overflow)
        })
        .collect();
    let mut hist: BTreeMap<usize, u64> = BTreeMap::new();
    let mut overflow = 0;
    for (h, o) in blocks {
        overflow += o;
        for (i, c) in h {
            *hist.entry(i).or_default() += c;
        }
    }
    let n = samples as f64;
    let rows: Vec<TailRow> = hist
        .into_iter()
        .map(|(i, count)| {
            let p = count as f64 / n;
            let se = (p * (1.0 - p) / n).sqrt();
            let bound = cfg.bound(i);
            TailRow {
                i,
                count,
                empirical: p,
                bound,
                standard_error: se,
                violated: count >= MIN_COUNT && p > bound + 3.0 * se,
            }
        })
        .collect();
    let violations = rows.iter().filter(|r| r.violated).count();
    Ok(BranchingReport {
        a: cfg.a,
        samples,
        overflow,
        rows,
        violations,
    })
}
