use std::cmp::Ordering;
use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::normalize::{combine_light_units, normalize, NormalizedCover};
use super::DecompositionConfig;
use crate::cover::{CycleCover, PathCollection};
use crate::error::{Error, Result};
use crate::instance::EdgeWeights;
use crate::weight::{cmp_fraction, Rational, WeightVector};

pub(crate) fn check_light(
    cover: &CycleCover,
    w: &impl EdgeWeights,
    alpha: Rational,
) -> Result<WeightVector> {
    let total = cover.weight(w);
    for (a, b) in cover.edges() {
        let we = w.edge_weight(a, b);
        if !we.within(&total, alpha) {
            return Err(Error::contract(format!(
                "edge ({a},{b}) with weight {we} exceeds {alpha} * {total}"
            )));
        }
    }
    Ok(total)
}

fn check_config(w: &impl EdgeWeights, cfg: &DecompositionConfig) -> Result<()> {
    if cfg.k != w.criteria() {
        return Err(Error::dimension(cfg.k, w.criteria()));
    }
    if cfg.k < 2 {
        return Err(Error::contract(
            "decomposition search needs k >= 2; use the single-criterion rule instead",
        ));
    }
    if cfg.alpha <= Rational::from_integer(0) || cfg.alpha > Rational::from_integer(1) {
        return Err(Error::Usage(format!("alpha must lie in (0, 1], got {}", cfg.alpha)));
    }
    Ok(())
}

/// Deterministic decomposition of a light cover.
///
/// The cover is scaled so every criterion sums to `1 / alpha`, normalized
/// into 2- or 3-edge units, light units are merged, and then every choice of
/// one dropped edge per unit is searched for the one maximizing the smallest
/// scaled criterion. Criteria with zero total weight are ignored.
pub fn lightweight(
    cover: &CycleCover,
    w: &impl EdgeWeights,
    cfg: &DecompositionConfig,
) -> Result<PathCollection> {
    check_config(w, cfg)?;
    check_light(cover, w, cfg.alpha)?;
    let mut nc = normalize(cover, w);
    nc.rescale(cfg.alpha);
    let nc = combine_light_units(nc, cfg.alpha);
    let dropped = best_drop_choice(&nc);
    nc.translate(cover, &dropped)
}

/// The drop choice maximizing `min_i kept_i / total_i` over criteria with a
/// nonzero total; the first optimum in search order wins ties.
///
/// Units are visited by decreasing largest scaled weight and choices in
/// mixed-radix counter order (first unit most significant). Branches whose
/// optimistic bound cannot strictly beat the incumbent are cut, which keeps
/// the search exact and preserves the first-found tie rule.
pub(crate) fn best_drop_choice(nc: &NormalizedCover) -> Vec<usize> {
    let totals: Vec<u64> = nc.totals().iter().copied().collect();
    let active: Vec<usize> = (0..totals.len()).filter(|&i| totals[i] > 0).collect();
    let units = nc.units();
    let m = units.len();
    if active.is_empty() || m == 0 {
        return vec![0; m];
    }
    let den: Vec<u64> = active.iter().map(|&i| totals[i]).collect();

    // largest scaled component of each unit, compared as fractions
    let unit_key = |u: usize| -> (u64, u64) {
        let w = units[u].weight();
        let mut best = (0u64, 1u64);
        for (a, &i) in active.iter().enumerate() {
            if cmp_fraction(w[i], den[a], best.0, best.1) == Ordering::Greater {
                best = (w[i], den[a]);
            }
        }
        best
    };
    let mut order: Vec<usize> = (0..m).collect();
    let keys: Vec<(u64, u64)> = (0..m).map(unit_key).collect();
    order.sort_by(|&x, &y| cmp_fraction(keys[y].0, keys[y].1, keys[x].0, keys[x].1));

    let radix = units[0].edges.len();
    // kept[d][c][a]: kept weight of the d-th visited unit under choice c
    let kept: Vec<Vec<Vec<u64>>> = order
        .iter()
        .map(|&u| {
            (0..radix)
                .map(|c| {
                    let kw = units[u].kept_weight(c);
                    active.iter().map(|&i| kw[i]).collect()
                })
                .collect()
        })
        .collect();
    let mut suffix = vec![vec![0u64; active.len()]; m + 1];
    for d in (0..m).rev() {
        for a in 0..active.len() {
            let best = kept[d].iter().map(|v| v[a]).max().unwrap_or(0);
            suffix[d][a] = suffix[d + 1][a] + best;
        }
    }

    let mut search = DropSearch {
        kept: &kept,
        suffix: &suffix,
        den: &den,
        cur: vec![0; active.len()],
        choice: vec![0; m],
        best: None,
    };
    search.run(0);
    let (_, best_choice) = search.best.expect("at least one leaf is visited");
    let mut dropped = vec![0; m];
    for (d, &u) in order.iter().enumerate() {
        dropped[u] = best_choice[d];
    }
    dropped
}

struct DropSearch<'a> {
    kept: &'a [Vec<Vec<u64>>],
    suffix: &'a [Vec<u64>],
    den: &'a [u64],
    cur: Vec<u64>,
    choice: Vec<usize>,
    best: Option<((u64, u64), Vec<usize>)>,
}

impl DropSearch<'_> {
    fn min_ratio(&self, extra: Option<&[u64]>) -> (u64, u64) {
        let mut best: Option<(u64, u64)> = None;
        for a in 0..self.den.len() {
            let num = self.cur[a] + extra.map_or(0, |e| e[a]);
            let cand = (num, self.den[a]);
            if best.is_none_or(|b| cmp_fraction(cand.0, cand.1, b.0, b.1) == Ordering::Less) {
                best = Some(cand);
            }
        }
        best.expect("at least one active criterion")
    }

    fn run(&mut self, depth: usize) {
        if depth == self.kept.len() {
            let score = self.min_ratio(None);
            let better = self
                .best
                .as_ref()
                .is_none_or(|(b, _)| cmp_fraction(score.0, score.1, b.0, b.1) == Ordering::Greater);
            if better {
                self.best = Some((score, self.choice.clone()));
            }
            return;
        }
        if let Some((b, _)) = &self.best {
            let bound = self.min_ratio(Some(&self.suffix[depth]));
            if cmp_fraction(bound.0, bound.1, b.0, b.1) != Ordering::Greater {
                return;
            }
        }
        for c in 0..self.kept[depth].len() {
            for (a, x) in self.kept[depth][c].iter().enumerate() {
                self.cur[a] += x;
            }
            self.choice[depth] = c;
            self.run(depth + 1);
            for (a, x) in self.kept[depth][c].iter().enumerate() {
                self.cur[a] -= x;
            }
        }
    }
}

/// Bookkeeping of one [`rand_lightweight_with_stats`] call.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RandomDecompositionStats {
    /// Random attempts made (0 when the deterministic path ran directly).
    pub attempts: usize,
    /// Attempts whose result met the bound (0 or 1).
    pub successes: usize,
    /// Whether the deterministic search produced the result.
    pub deterministic: bool,
}

/// Randomized decomposition: for `k >= 6`, drop one uniformly random edge of
/// every cycle until the result keeps an `alpha` fraction of every
/// criterion; after `max_random_attempts` failures fall back to
/// [`lightweight`]. For `k < 6` this is exactly [`lightweight`].
pub fn rand_lightweight(
    cover: &CycleCover,
    w: &impl EdgeWeights,
    cfg: &DecompositionConfig,
) -> Result<PathCollection> {
    rand_lightweight_with_stats(cover, w, cfg).map(|(p, _)| p)
}

pub fn rand_lightweight_with_stats(
    cover: &CycleCover,
    w: &impl EdgeWeights,
    cfg: &DecompositionConfig,
) -> Result<(PathCollection, RandomDecompositionStats)> {
    check_config(w, cfg)?;
    let total = check_light(cover, w, cfg.alpha)?;
    let mut stats = RandomDecompositionStats::default();
    if cfg.k >= 6 {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
        let cycle_edges: Vec<Vec<WeightVector>> = (0..cover.cycles().len())
            .map(|c| {
                cover
                    .cycle_edges(c)
                    .into_iter()
                    .map(|(a, b)| w.edge_weight(a, b))
                    .collect()
            })
            .collect();
        for _ in 0..cfg.max_random_attempts {
            stats.attempts += 1;
            let mut kept = total.clone();
            let mut removed = HashSet::new();
            for (c, edges) in cycle_edges.iter().enumerate() {
                let j = rng.gen_range(0..edges.len());
                removed.insert((c, j));
                for (x, y) in kept.components_mut().iter_mut().zip(edges[j].iter()) {
                    *x -= y;
                }
            }
            if kept.covers(&total, cfg.alpha)? {
                stats.successes += 1;
                return Ok((PathCollection::removing(cover, &removed)?, stats));
            }
        }
    }
    stats.deterministic = true;
    Ok((lightweight(cover, w, cfg)?, stats))
}
