use std::collections::HashSet;

use super::patch::{distinct_completions, patch_collection};
use super::{heavy_edge, AlgoConfig};
use crate::cover::HamiltonianCycle;
use crate::cyclecover::{cover_pareto, CoverBackend, CoverParetoRequest};
use crate::decompose::{decompose_bicriteria_undirected, lightweight, rand_lightweight, DecompositionConfig};
use crate::error::{Error, Result};
use crate::instance::{Direction, Instance};
use crate::pareto::ParetoSet;

/// Approximate Pareto curve of undirected tours keeping `1/k - eps` of every
/// tour, for `k >= 2`.
///
/// With two criteria every cover is decomposed unconditionally. Otherwise
/// light covers are decomposed and patched; for a cover with a heavy edge
/// `{u,v}` the algorithm guesses up to `4k` further vertices `X`, drops one
/// criterion, zeroes every edge touching `U = X + {u,v}`, recurses, and
/// completes each recursive tour, minus its edges inside `U`, by edges
/// touching `U` in every possible way.
pub fn stsp_alg(inst: &Instance, cfg: &AlgoConfig) -> Result<ParetoSet<HamiltonianCycle>> {
    cfg.validate()?;
    if inst.direction() != Direction::Undirected {
        return Err(Error::contract("stsp_alg needs an undirected instance"));
    }
    if inst.k() < 2 {
        return Err(Error::contract(
            "stsp_alg needs k >= 2; use mono_maxstsp_twothirds_style for one criterion",
        ));
    }
    run(inst, cfg)
}

fn offer(out: &mut ParetoSet<HamiltonianCycle>, t: HamiltonianCycle, inst: &Instance) -> Result<()> {
    let w = t.weight(inst);
    out.insert(t, w).map(|_| ())
}

fn run(inst: &Instance, cfg: &AlgoConfig) -> Result<ParetoSet<HamiltonianCycle>> {
    let k = inst.k();
    let n = inst.n();
    let mut out = ParetoSet::new(k);
    let req = CoverParetoRequest::new(inst)
        .backend(CoverBackend::default_for(Direction::Undirected))
        .caps(cfg.caps)
        .epsilon(cfg.epsilon);
    let covers = cover_pareto(&req)?;
    if k == 2 {
        for (cover, _) in covers.entries() {
            let paths = decompose_bicriteria_undirected(cover, inst)?;
            offer(&mut out, patch_collection(&paths)?, inst)?;
        }
        return Ok(out);
    }
    let alpha = AlgoConfig::threshold(Direction::Undirected, k);
    // a branch depends only on U and the dropped criterion
    let mut branched: HashSet<(u64, usize)> = HashSet::new();
    for (idx, (cover, total)) in covers.entries().iter().enumerate() {
        let Some((_, (u, v))) = heavy_edge(cover, inst, total, alpha) else {
            let dcfg = DecompositionConfig::new(alpha, k).seed(cfg.derived(&[idx as u64]).rng_seed);
            let paths = if cfg.randomized_decomposition {
                rand_lightweight(cover, inst, &dcfg)?
            } else {
                lightweight(cover, inst, &dcfg)?
            };
            offer(&mut out, patch_collection(&paths)?, inst)?;
            continue;
        };
        let others: Vec<usize> = (0..n).filter(|&x| x != u && x != v).collect();
        let max_extra = (4 * k).min(others.len());
        for sub in 0u64..(1 << others.len()) {
            if sub.count_ones() as usize > max_extra {
                continue;
            }
            let mut in_u = vec![false; n];
            in_u[u] = true;
            in_u[v] = true;
            for (bit, &x) in others.iter().enumerate() {
                if sub >> bit & 1 == 1 {
                    in_u[x] = true;
                }
            }
            let mask = in_u.iter().enumerate().fold(0u64, |m, (x, &b)| if b { m | 1 << x } else { m });
            for j in 0..k {
                if branched.insert((mask, j)) {
                    branch(inst, &in_u, mask, j, cfg, &mut out)?;
                }
            }
        }
    }
    Ok(out)
}

fn branch(
    inst: &Instance,
    in_u: &[bool],
    mask: u64,
    j: usize,
    cfg: &AlgoConfig,
    out: &mut ParetoSet<HamiltonianCycle>,
) -> Result<()> {
    let sub = inst.drop_criterion(j)?.zero_incident(in_u);
    let rec = run(&sub, &cfg.derived(&[mask, j as u64]))?;
    for h in rec.solutions() {
        let kept: Vec<_> = h.edges().into_iter().filter(|&(a, b)| !(in_u[a] && in_u[b])).collect();
        for t in distinct_completions(inst.n(), &kept, |a, b| in_u[a] || in_u[b]) {
            offer(out, t, inst)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::ratio;

    #[test]
    fn bicriteria_outputs_are_tours() {
        let inst = Instance::from_fn(Direction::Undirected, 6, 2, |c, i, j| ((c + 2) * (i + 3 * j) % 17) as u64).unwrap();
        let out = stsp_alg(&inst, &AlgoConfig::new(ratio(1, 10))).unwrap();
        assert!(!out.is_empty());
        for (t, w) in out.entries() {
            assert_eq!(&t.weight(&inst), w);
        }
    }

    #[test]
    fn one_heavy_edge_survives() {
        let inst = Instance::from_fn(Direction::Undirected, 5, 3, |c, i, j| {
            if c == 2 { u64::from((i, j) == (1, 3)) * 50 } else { 2 }
        })
        .unwrap();
        let out = stsp_alg(&inst, &AlgoConfig::new(ratio(1, 10))).unwrap();
        assert!(out.solutions().any(|t| t.contains_edge(1, 3)));
    }

    #[test]
    fn rejects_single_criterion() {
        let inst = Instance::from_fn(Direction::Undirected, 4, 1, |_, _, _| 1).unwrap();
        assert!(stsp_alg(&inst, &AlgoConfig::default()).is_err());
    }
}
