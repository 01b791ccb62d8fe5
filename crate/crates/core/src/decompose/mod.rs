//! Decompositions of cycle covers into vertex-disjoint paths that keep a
//! guaranteed fraction of every criterion.
//!
//! A decomposition removes at least one edge from every cycle. For covers
//! whose edges are all *light* (each edge weighs at most `alpha * w(C)`
//! componentwise), [`lightweight`] finds a decomposition keeping
//! `alpha * w(C)` whenever `alpha <= 1/k` (undirected) or `alpha <= 1/(k+1)`
//! (directed).

mod lightweight;
mod normalize;
mod special;

pub use lightweight::{
    lightweight, rand_lightweight, rand_lightweight_with_stats, RandomDecompositionStats,
};
pub use normalize::{combine_light_units, normalize, EdgeSlot, NormalizedCover, SyntheticEdge, Unit};
pub use special::{
    decompose_bicriteria_undirected, decompose_k3_undirected, decompose_k3_undirected_traced,
    decompose_long_cycles, K3Trace,
};

use crate::instance::Direction;
use crate::weight::{ratio, Rational};

/// Parameters of a decomposition search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecompositionConfig {
    pub alpha: Rational,
    pub k: usize,
    pub rng_seed: u64,
    pub max_random_attempts: usize,
}

impl DecompositionConfig {
    pub fn new(alpha: Rational, k: usize) -> Self {
        DecompositionConfig {
            alpha,
            k,
            rng_seed: 0,
            max_random_attempts: 64 * k.max(1),
        }
    }

    /// Configuration at the guaranteed threshold for the given direction.
    pub fn guaranteed(direction: Direction, k: usize) -> Self {
        DecompositionConfig::new(guaranteed_alpha(direction, k), k)
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.rng_seed = seed;
        self
    }
}

/// Largest fraction every light cover is known to keep: `1/(k+1)` for
/// directed covers; `2/3` for a single undirected criterion and `1/k`
/// otherwise.
pub fn guaranteed_alpha(direction: Direction, k: usize) -> Rational {
    match direction {
        Direction::Directed => ratio(1, k as i64 + 1),
        Direction::Undirected if k == 1 => ratio(2, 3),
        Direction::Undirected => ratio(1, k as i64),
    }
}

/// `exp(-2 (2k/3 - 1)^2 / k)`, the tail bound on one criterion losing too
/// much weight when one random edge per triangle is dropped.
pub fn hoeffding_pk(k: u32) -> f64 {
    let k = f64::from(k);
    let t = 2.0 * k / 3.0 - 1.0;
    (-2.0 * t * t / k).exp()
}
