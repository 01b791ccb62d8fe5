//! Multi-criteria Max-TSP: approximate Pareto curves of Hamiltonian cycles.
//!
//! [`atsp_alg`] keeps `1/(k+1) - eps` of every tour and [`stsp_alg`] keeps
//! `1/k - eps`. Both start from the Pareto curve of cycle covers, decompose
//! covers without heavy edges into paths, and handle a heavy edge by
//! guessing its neighbourhood in an optimal tour and recursing on `k - 1`
//! criteria.

mod atsp;
mod mono;
mod patch;
mod pattern;
mod stsp;

pub use atsp::atsp_alg;
pub use mono::{mono_maxatsp_half, mono_maxstsp_twothirds_style};
pub use patch::{patch_collection, patch_paths};
pub use pattern::{
    contract_pabcd, expand_order, expand_tour, is_legal_pabcd, ContractedNode, ContractionMap,
    ExpansionMode, PabcdPattern,
};
pub use stsp::stsp_alg;

use crate::cover::CycleCover;
use crate::cyclecover::CoverCaps;
use crate::error::{Error, Result};
use crate::instance::{Direction, Edge, Instance};
use crate::pareto::ParetoSet;
use crate::weight::{cmp_fraction, le_scaled, ratio, Rational, WeightVector};

/// Parameters shared by both algorithms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AlgoConfig {
    /// Accuracy of the cycle-cover curve. With the exact backends it only
    /// enters the promised ratio.
    pub epsilon: Rational,
    pub rng_seed: u64,
    pub caps: CoverCaps,
    /// Use the randomized decomposition for light covers.
    pub randomized_decomposition: bool,
}

impl Default for AlgoConfig {
    fn default() -> Self {
        AlgoConfig {
            epsilon: ratio(1, 10),
            rng_seed: 0,
            caps: CoverCaps::default(),
            randomized_decomposition: false,
        }
    }
}

impl AlgoConfig {
    pub fn new(epsilon: Rational) -> Self {
        AlgoConfig { epsilon, ..AlgoConfig::default() }
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.rng_seed = seed;
        self
    }

    pub fn randomized(mut self, on: bool) -> Self {
        self.randomized_decomposition = on;
        self
    }

    pub fn caps(mut self, caps: CoverCaps) -> Self {
        self.caps = caps;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.epsilon <= ratio(0, 1) || self.epsilon >= ratio(1, 1) {
            return Err(Error::Usage(format!("epsilon must lie in (0, 1), got {}", self.epsilon)));
        }
        Ok(())
    }

    /// Light-edge threshold: `1/(k+1)` directed, `1/k` undirected.
    pub fn threshold(direction: Direction, k: usize) -> Rational {
        match direction {
            Direction::Directed => ratio(1, k as i64 + 1),
            Direction::Undirected => ratio(1, k.max(1) as i64),
        }
    }

    /// The ratio the output promises against every tour.
    pub fn promised_ratio(&self, direction: Direction, k: usize) -> Rational {
        let base = match (direction, k) {
            (Direction::Directed, 1) => ratio(1, 2),
            (Direction::Undirected, 1) => ratio(2, 3),
            _ => AlgoConfig::threshold(direction, k),
        };
        if k == 1 {
            base
        } else {
            base - self.epsilon
        }
    }

    /// Seed for a sub-computation, derived from this seed and a path of
    /// indices so that results never depend on evaluation order.
    pub(crate) fn derived(&self, tags: &[u64]) -> AlgoConfig {
        let mut s = self.rng_seed;
        for &t in tags {
            s = splitmix(s ^ splitmix(t));
        }
        AlgoConfig { rng_seed: s, ..*self }
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// A cover edge and criterion with `w_i(e) > alpha * w_i(C)`, or `None` if
/// the cover is light. Among violations the largest `w_i(e) / w_i(C)` wins;
/// ties go to the smaller criterion, then the smaller edge.
pub(crate) fn heavy_edge(
    cover: &CycleCover,
    inst: &Instance,
    total: &WeightVector,
    alpha: Rational,
) -> Option<(usize, Edge)> {
    let mut edges = cover.edges();
    if cover.direction() == Direction::Undirected {
        for e in edges.iter_mut() {
            *e = (e.0.min(e.1), e.0.max(e.1));
        }
    }
    edges.sort_unstable();
    let mut best: Option<(usize, Edge, u64)> = None;
    for i in 0..inst.k() {
        let wi = total.components()[i];
        for &(a, b) in &edges {
            let we = inst.weight(i, a, b);
            if le_scaled(we, alpha, wi) {
                continue;
            }
            let better = match best {
                None => true,
                Some((j, _, wb)) => {
                    cmp_fraction(we, wi, wb, total.components()[j]) == std::cmp::Ordering::Greater
                }
            };
            if better {
                best = Some((i, (a, b), we));
            }
        }
    }
    best.map(|(i, e, _)| (i, e))
}

/// Union of `m` runs with seeds `cfg.rng_seed, cfg.rng_seed + 1, ...`,
/// Pareto-pruned. Repetition boosts the success probability of randomized
/// steps to `1 - 2^-m` when a single run succeeds with probability 1/2.
pub fn amplify<S>(
    m: usize,
    cfg: &AlgoConfig,
    mut run: impl FnMut(&AlgoConfig) -> Result<ParetoSet<S>>,
) -> Result<ParetoSet<S>> {
    if m == 0 {
        return Err(Error::Usage("amplification needs at least one run".into()));
    }
    let mut out: Option<ParetoSet<S>> = None;
    for t in 0..m {
        let c = AlgoConfig { rng_seed: cfg.rng_seed.wrapping_add(t as u64), ..*cfg };
        let set = run(&c)?;
        match out.as_mut() {
            None => out = Some(set),
            Some(acc) => acc.merge(set)?,
        }
    }
    Ok(out.expect("m >= 1"))
}

/// Runs [`atsp_alg`] or [`stsp_alg`] by direction; single-criterion
/// undirected instances go to [`mono_maxstsp_twothirds_style`].
pub fn solve(inst: &Instance, cfg: &AlgoConfig) -> Result<ParetoSet<crate::cover::HamiltonianCycle>> {
    match (inst.direction(), inst.k()) {
        (Direction::Directed, _) => atsp_alg(inst, cfg),
        (Direction::Undirected, 1) => {
            cfg.validate()?;
            let t = mono_maxstsp_twothirds_style(inst)?;
            let mut out = ParetoSet::new(1);
            let w = t.weight(inst);
            out.insert(t, w)?;
            Ok(out)
        }
        (Direction::Undirected, _) => stsp_alg(inst, cfg),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_checks() {
        assert!(AlgoConfig::new(ratio(1, 10)).validate().is_ok());
        assert!(AlgoConfig::new(ratio(0, 1)).validate().is_err());
        assert!(AlgoConfig::new(ratio(1, 1)).validate().is_err());
        let c = AlgoConfig::new(ratio(1, 10));
        assert_eq!(c.promised_ratio(Direction::Directed, 2), ratio(7, 30));
        assert_eq!(c.promised_ratio(Direction::Undirected, 3), ratio(7, 30));
        assert_eq!(c.promised_ratio(Direction::Directed, 1), ratio(1, 2));
        assert_ne!(c.derived(&[1]).rng_seed, c.derived(&[2]).rng_seed);
        assert_eq!(c.derived(&[1, 2]).rng_seed, c.derived(&[1, 2]).rng_seed);
    }

    #[test]
    fn heavy_edge_prefers_largest_share() {
        let inst = Instance::from_fn(Direction::Directed, 4, 2, |c, i, j| match (c, i, j) {
            (0, 0, 1) => 6,
            (1, 2, 3) => 9,
            (_, _, _) => 1,
        })
        .unwrap();
        let cover = CycleCover::new(Direction::Directed, 4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        let total = cover.weight(&inst);
        assert_eq!(total, WeightVector::new(vec![9, 12]));
        // 6/9 < 9/12
        assert_eq!(heavy_edge(&cover, &inst, &total, ratio(1, 3)), Some((1, (2, 3))));
        assert_eq!(heavy_edge(&cover, &inst, &total, ratio(1, 1)), None);
    }

    #[test]
    fn amplify_needs_a_run() {
        let cfg = AlgoConfig::default();
        assert!(amplify(0, &cfg, |_| Ok(ParetoSet::<()>::new(1))).is_err());
        let mut seeds = Vec::new();
        amplify(3, &cfg.seed(10), |c| {
            seeds.push(c.rng_seed);
            Ok(ParetoSet::<()>::new(1))
        })
        .unwrap();
        assert_eq!(seeds, vec![10, 11, 12]);
    }
}
