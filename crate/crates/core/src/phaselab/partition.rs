use rand::seq::SliceRandom;
use rand::Rng;

/// Abstract clusters over `n` sites: a union-find forest with sizes at roots.
#[derive(Clone, Debug)]
pub struct ClusterPartition {
    parent: Vec<u32>,
    size: Vec<u32>,
    clusters: usize,
    t: usize,
    scratch: Vec<u32>,
}

impl ClusterPartition {
    /// `n` singleton clusters.
    pub fn new(n: usize) -> Self {
        assert!(n <= u32::MAX as usize, "too many sites");
        Self {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
            clusters: n,
            t: 0,
            scratch: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    /// Completed steps.
    pub fn t(&self) -> usize {
        self.t
    }

    pub fn tick(&mut self) {
        self.t += 1;
    }

    pub fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] as usize != i {
            let p = self.parent[i] as usize;
            self.parent[i] = self.parent[p];
            i = p;
        }
        i
    }

    /// Merges the clusters of `a` and `b`; returns the new root.
    pub fn union(&mut self, a: usize, b: usize) -> usize {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return ra;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra as u32;
        self.size[ra] += self.size[rb];
        self.clusters -= 1;
        ra
    }

    pub fn size_of(&mut self, i: usize) -> usize {
        let r = self.find(i);
        self.size[r] as usize
    }

    pub fn num_clusters(&self) -> usize {
        self.clusters
    }

    pub fn max_cluster(&self) -> usize {
        (0..self.n())
            .filter(|&i| self.parent[i] as usize == i)
            .map(|i| self.size[i] as usize)
            .max()
            .unwrap_or(0)
    }

    /// Sizes of all clusters, descending.
    pub fn cluster_sizes(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.n())
            .filter(|&i| self.parent[i] as usize == i)
            .map(|i| self.size[i] as usize)
            .collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    /// Makes every site with `separated[i]` a singleton; the remaining
    /// members of each cluster stay together. Rebuilds the forest flat.
    pub fn separate(&mut self, separated: &[bool]) {
        let n = self.n();
        assert_eq!(separated.len(), n);
        const NONE: u32 = u32::MAX;
        let mut rep = std::mem::take(&mut self.scratch);
        rep.clear();
        rep.resize(n, NONE);
        let roots: Vec<u32> = (0..n).map(|i| self.find(i) as u32).collect();
        self.size.iter_mut().for_each(|s| *s = 0);
        self.clusters = 0;
        for i in 0..n {
            let target = if separated[i] {
                i as u32
            } else {
                let r = roots[i] as usize;
                if rep[r] == NONE {
                    rep[r] = i as u32;
                }
                rep[r]
            };
            self.parent[i] = target;
            if self.size[target as usize] == 0 {
                self.clusters += 1;
            }
            self.size[target as usize] += 1;
        }
        self.scratch = rep;
    }

    /// Checks the structural invariants.
    pub fn audit(&mut self) -> Result<(), String> {
        let n = self.n();
        let mut total = 0;
        let mut roots = 0;
        for i in 0..n {
            let r = self.find(i);
            if self.find(r) != r {
                return Err(format!("find is not idempotent at {i}"));
            }
            if r == i {
                roots += 1;
                if self.size[i] == 0 {
                    return Err(format!("root {i} has size 0"));
                }
                total += self.size[i] as usize;
            }
        }
        if total != n {
            return Err(format!("sizes sum to {total}, expected {n}"));
        }
        if roots != self.clusters {
            return Err(format!("{roots} roots but {} clusters recorded", self.clusters));
        }
        Ok(())
    }
}

/// Unions the clusters along a uniformly random perfect matching; with odd
/// `n` one uniformly random site stays unmatched.
pub fn matching_step_random<R: Rng + ?Sized>(p: &mut ClusterPartition, order: &mut Vec<u32>, rng: &mut R) {
    let n = p.n();
    if order.len() != n {
        *order = (0..n as u32).collect();
    }
    order.shuffle(rng);
    for pair in order.chunks_exact(2) {
        p.union(pair[0] as usize, pair[1] as usize);
    }
}

/// Unions `(2i, 2i+1)` for even parity and `(2i+1, 2i+2)` for odd parity, on
/// a line without wraparound.
pub fn matching_step_1d(p: &mut ClusterPartition, odd: bool) {
    let n = p.n();
    let mut i = usize::from(odd);
    while i + 1 < n {
        p.union(i, i + 1);
        i += 2;
    }
}

/// Separates each site from its cluster independently with probability `eta`.
/// Returns the number of sites separated.
pub fn decohere_step<R: Rng + ?Sized>(p: &mut ClusterPartition, eta: f64, mask: &mut Vec<bool>, rng: &mut R) -> usize {
    let n = p.n();
    mask.clear();
    mask.extend((0..n).map(|_| rng.random::<f64>() < eta));
    if eta > 0.0 {
        p.separate(mask);
    }
    mask.iter().filter(|&&b| b).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn union_find_basics() {
        let mut p = ClusterPartition::new(5);
        p.union(0, 1);
        p.union(3, 4);
        p.union(1, 4);
        assert_eq!(p.size_of(3), 4);
        assert_eq!(p.num_clusters(), 2);
        assert_eq!(p.cluster_sizes(), vec![4, 1]);
        p.audit().unwrap();
    }

    #[test]
    fn random_matching_small_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut order = Vec::new();
        let mut p = ClusterPartition::new(2);
        matching_step_random(&mut p, &mut order, &mut rng);
        assert_eq!(p.cluster_sizes(), vec![2]);
        let mut p = ClusterPartition::new(1);
        matching_step_random(&mut p, &mut order, &mut rng);
        assert_eq!(p.cluster_sizes(), vec![1]);
        let mut p = ClusterPartition::new(7);
        matching_step_random(&mut p, &mut order, &mut rng);
        assert_eq!(p.cluster_sizes(), vec![2, 2, 2, 1]);
    }

    #[test]
    fn one_dimensional_pairs() {
        let mut p = ClusterPartition::new(4);
        matching_step_1d(&mut p, false);
        assert_eq!(p.find(0), p.find(1));
        assert_eq!(p.find(2), p.find(3));
        assert_ne!(p.find(1), p.find(2));
        let mut p = ClusterPartition::new(4);
        matching_step_1d(&mut p, true);
        assert_eq!(p.cluster_sizes(), vec![2, 1, 1]);
        assert_eq!(p.find(1), p.find(2));
        let mut p = ClusterPartition::new(3);
        matching_step_1d(&mut p, false);
        assert_eq!(p.find(0), p.find(1));
        assert_eq!(p.size_of(2), 1);
    }

    #[test]
    fn decoherence_extremes() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut mask = Vec::new();
        let mut p = ClusterPartition::new(10);
        matching_step_1d(&mut p, false);
        matching_step_1d(&mut p, true);
        decohere_step(&mut p, 0.0, &mut mask, &mut rng);
        assert_eq!(p.cluster_sizes(), vec![10]);
        decohere_step(&mut p, 1.0, &mut mask, &mut rng);
        assert_eq!(p.num_clusters(), 10);
        p.audit().unwrap();
    }

    #[test]
    fn separation_keeps_survivors_together() {
        let mut p = ClusterPartition::new(6);
        for i in 0..5 {
            p.union(i, i + 1);
        }
        p.separate(&[false, true, false, true, false, false]);
        assert_eq!(p.cluster_sizes(), vec![4, 1, 1]);
        assert_eq!(p.find(0), p.find(5));
        p.audit().unwrap();
    }

    #[test]
    fn survivors_are_binomial() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let k = 50;
        let reps = 10_000;
        let mut mask = Vec::new();
        let mut total = 0usize;
        for _ in 0..reps {
            let mut p = ClusterPartition::new(k);
            for i in 1..k {
                p.union(0, i);
            }
            decohere_step(&mut p, 0.5, &mut mask, &mut rng);
            let survivors = mask.iter().position(|&s| !s).map_or(0, |i| p.size_of(i));
            total += survivors;
        }
        let mean = total as f64 / reps as f64;
        // Binomial(50, 0.5); a lone survivor still counts as size 1
        let sigma = (k as f64 * 0.25 / reps as f64).sqrt();
        assert!((mean - 25.0).abs() < 3.0 * sigma, "{mean}");
    }
}
