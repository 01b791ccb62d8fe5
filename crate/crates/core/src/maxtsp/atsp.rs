use std::collections::HashSet;

use super::mono::mono_maxatsp_half;
use super::patch::patch_collection;
use super::pattern::{contract_pabcd, expand_order, expand_tour, ContractionMap, ExpansionMode, PabcdPattern};
use super::{heavy_edge, AlgoConfig};
use crate::cover::HamiltonianCycle;
use crate::cyclecover::{cover_pareto, CoverBackend, CoverParetoRequest};
use crate::decompose::{lightweight, rand_lightweight, DecompositionConfig};
use crate::error::{Error, Result};
use crate::instance::{Direction, Edge, Instance};
use crate::pareto::ParetoSet;

/// Approximate Pareto curve of directed tours keeping `1/(k+1) - eps` of
/// every tour.
///
/// Covers of the cycle-cover curve whose edges are all light are decomposed
/// and patched. For a cover with a heavy arc `(u,v)`, every legal choice of
/// the arcs entering and leaving `u` and `v` is contracted, one criterion is
/// dropped, and the recursive tours are expanded twice: once with the
/// pattern and once through `(u,v)`. With `k = 1` this is
/// [`mono_maxatsp_half`].
pub fn atsp_alg(inst: &Instance, cfg: &AlgoConfig) -> Result<ParetoSet<HamiltonianCycle>> {
    cfg.validate()?;
    if inst.direction() != Direction::Directed {
        return Err(Error::contract("atsp_alg needs a directed instance"));
    }
    run(inst, cfg)
}

fn offer(out: &mut ParetoSet<HamiltonianCycle>, t: HamiltonianCycle, inst: &Instance) -> Result<()> {
    let w = t.weight(inst);
    out.insert(t, w).map(|_| ())
}

fn run(inst: &Instance, cfg: &AlgoConfig) -> Result<ParetoSet<HamiltonianCycle>> {
    let k = inst.k();
    let mut out = ParetoSet::new(k);
    if k == 1 {
        offer(&mut out, mono_maxatsp_half(inst)?, inst)?;
        return Ok(out);
    }
    let req = CoverParetoRequest::new(inst)
        .backend(CoverBackend::BitmaskDp)
        .caps(cfg.caps)
        .epsilon(cfg.epsilon);
    let covers = cover_pareto(&req)?;
    let alpha = AlgoConfig::threshold(Direction::Directed, k);
    let mut branched: HashSet<Edge> = HashSet::new();
    for (idx, (cover, total)) in covers.entries().iter().enumerate() {
        match heavy_edge(cover, inst, total, alpha) {
            None => {
                let dcfg = DecompositionConfig::new(alpha, k).seed(cfg.derived(&[idx as u64]).rng_seed);
                let paths = if cfg.randomized_decomposition {
                    rand_lightweight(cover, inst, &dcfg)?
                } else {
                    lightweight(cover, inst, &dcfg)?
                };
                offer(&mut out, patch_collection(&paths)?, inst)?;
            }
            // the branch depends only on the arc, so each arc is explored once
            Some((_, e)) if branched.insert(e) => heavy_branch(inst, e, cfg, &mut out)?,
            Some(_) => {}
        }
    }
    Ok(out)
}

fn heavy_branch(
    inst: &Instance,
    e: Edge,
    cfg: &AlgoConfig,
    out: &mut ParetoSet<HamiltonianCycle>,
) -> Result<()> {
    let n = inst.n();
    let k = inst.k();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let p = PabcdPattern::new(e, a, b, c, d);
                    // on tiny instances the pattern may close into a tour
                    if let Some(t) = p.as_tour(n) {
                        offer(out, t, inst)?;
                        continue;
                    }
                    if p.paths().is_none() {
                        continue;
                    }
                    let map = ContractionMap::build(n, &p)?;
                    let modes: &[ExpansionMode] = if map.is_single_path() {
                        &[ExpansionMode::WithPattern, ExpansionMode::WithEdgeUv]
                    } else {
                        &[
                            ExpansionMode::WithPattern,
                            ExpansionMode::WithEdgeUv,
                            ExpansionMode::WithEdgeUvCrossed,
                        ]
                    };
                    if map.len() < Direction::Directed.min_vertices() {
                        for &mode in modes {
                            offer(out, expand_order(&[0], &map, mode)?, inst)?;
                        }
                        continue;
                    }
                    let (g, map) = contract_pabcd(inst, &p)?;
                    let tag = (((a * n + b) * n + c) * n + d) as u64;
                    for i in 0..k {
                        let sub = g.drop_criterion(i)?;
                        let rec = run(&sub, &cfg.derived(&[tag, i as u64]))?;
                        for h in rec.solutions() {
                            for &mode in modes {
                                offer(out, expand_tour(h, &map, mode)?, inst)?;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::ratio;

    #[test]
    fn single_criterion_is_mono() {
        let inst = Instance::from_fn(Direction::Directed, 5, 1, |_, i, j| ((i * 7 + j * 3) % 11) as u64).unwrap();
        let out = atsp_alg(&inst, &AlgoConfig::default()).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out.entries()[0].0, mono_maxatsp_half(&inst).unwrap());
    }

    #[test]
    fn outputs_are_tours_of_the_instance() {
        let inst = Instance::from_fn(Direction::Directed, 5, 2, |c, i, j| ((c + 1) * (i * 5 + j) % 13) as u64).unwrap();
        let out = atsp_alg(&inst, &AlgoConfig::new(ratio(1, 10))).unwrap();
        assert!(!out.is_empty());
        for (t, w) in out.entries() {
            assert_eq!(t.n(), 5);
            assert_eq!(&t.weight(&inst), w);
        }
    }

    #[test]
    fn tiny_instances() {
        for n in 2..=3 {
            let inst = Instance::from_fn(Direction::Directed, n, 2, |c, i, j| if c == 0 && i == 0 && j == 1 { 9 } else { 1 }).unwrap();
            let out = atsp_alg(&inst, &AlgoConfig::default()).unwrap();
            assert!(out.vectors().any(|w| w.components()[0] >= 9), "n={n}");
        }
    }

    #[test]
    fn rejects_undirected() {
        let inst = Instance::from_fn(Direction::Undirected, 4, 2, |_, _, _| 1).unwrap();
        assert!(atsp_alg(&inst, &AlgoConfig::default()).is_err());
    }
}
