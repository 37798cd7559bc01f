//! Random graphs, the constructive pipelines behind the random-graph
//! theorems, and seeded Monte Carlo runs over them.

mod experiment;
mod pipelines;

pub use experiment::{
    monte_carlo, run_trial, write_csv, ExperimentRow, Method, Model, MonteCarlo, Thresholds, TrialOutcome, CSV_HEADER,
};
pub use pipelines::{
    bipartite_pipeline, high_density_pipeline, intermediate_pipeline, BipartiteSuccess, Case, Certificate,
    ClosureCertificate, ClosureStep, Failure, HighSuccess, IntermediateSuccess, Verification, EXHAUSTIVE_PAIRS,
    MAX_SPLITS, SPOT_CHECKS,
};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits::VertexSet;
use crate::graph::Graph;

/// Master seed; each trial gets its own ChaCha stream.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RngConfig {
    pub seed: u64,
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

impl RngConfig {
    /// Generator for one trial of one grid point. Depends only on the
    /// arguments, never on scheduling.
    pub fn trial_rng(&self, model: Model, n1: usize, n2: usize, p: f64, trial: u64) -> ChaCha8Rng {
        let key = [model as u64, n1 as u64, n2 as u64, p.to_bits()]
            .into_iter()
            .fold(splitmix(self.seed), |h, x| splitmix(h ^ x));
        let mut rng = ChaCha8Rng::seed_from_u64(key);
        rng.set_stream(trial);
        rng
    }
}

/// G(n, p): every pair independently with probability `p`.
///
/// ```
/// use legalsys::random::sample_gnp;
/// use rand::SeedableRng;
/// let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
/// assert_eq!(sample_gnp(6, 1.0, &mut rng).edge_count(), 15);
/// assert_eq!(sample_gnp(6, 0.0, &mut rng).edge_count(), 0);
/// ```
pub fn sample_gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let p = p.clamp(0.0, 1.0);
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                g.add_edge(u, v).expect("in range");
            }
        }
    }
    g
}

/// G(n₁, n₂, p) with sides `0..n1` and `n1..n1 + n2`.
pub fn sample_bipartite<R: Rng + ?Sized>(n1: usize, n2: usize, p: f64, rng: &mut R) -> Graph {
    let p = p.clamp(0.0, 1.0);
    let mut g = Graph::new(n1 + n2);
    for u in 0..n1 {
        for v in n1..n1 + n2 {
            if rng.random_bool(p) {
                g.add_edge(u, v).expect("in range");
            }
        }
    }
    g
}

/// The two sides of a graph drawn by [`sample_bipartite`].
pub fn bipartite_sides(n1: usize, n2: usize) -> (VertexSet, VertexSet) {
    let n = n1 + n2;
    (VertexSet::from_iter(n, 0..n1), VertexSet::from_iter(n, n1..n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_count_is_near_its_mean() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let g = sample_gnp(100, 0.5, &mut rng);
        let mean = 4950.0 * 0.5;
        let sd = (4950.0f64 * 0.25).sqrt();
        assert!((g.edge_count() as f64 - mean).abs() < 4.0 * sd);
    }

    #[test]
    fn bipartite_extremes() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert_eq!(sample_bipartite(4, 5, 1.0, &mut rng).edge_count(), 20);
        assert_eq!(sample_bipartite(4, 5, 0.0, &mut rng).edge_count(), 0);
    }

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let cfg = RngConfig { seed: 5 };
        let a = sample_gnp(20, 0.5, &mut cfg.trial_rng(Model::Gnp, 20, 0, 0.5, 3));
        let b = sample_gnp(20, 0.5, &mut cfg.trial_rng(Model::Gnp, 20, 0, 0.5, 3));
        let c = sample_gnp(20, 0.5, &mut cfg.trial_rng(Model::Gnp, 20, 0, 0.5, 4));
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
