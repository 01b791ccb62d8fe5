//! Ground truth by exhaustive enumeration: exact Pareto curves of tours and
//! cycle covers, a coverage verifier, and a search for covers that cannot be
//! decomposed better than a given ratio.

use std::collections::HashSet;
use std::hash::Hasher;

use fnv::FnvHasher;
use itertools::Itertools;

use crate::cover::{CycleCover, HamiltonianCycle};
use crate::error::{Error, Result};
use crate::format::write_instance;
use crate::instance::{Direction, EdgeWeightMap, Instance};
use crate::pareto::ParetoSet;
use crate::weight::{ratio, Rational, WeightVector};

/// Largest `n` each enumeration accepts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleCaps {
    pub directed_tours: usize,
    pub undirected_tours: usize,
    pub directed_covers: usize,
    pub undirected_covers: usize,
}

impl Default for OracleCaps {
    fn default() -> Self {
        OracleCaps {
            directed_tours: 9,
            undirected_tours: 10,
            directed_covers: 8,
            undirected_covers: 9,
        }
    }
}

fn check_cap(what: &'static str, n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::Capacity { what, n, cap });
    }
    Ok(())
}

/// Calls `visit` on every tour on `n` vertices, each exactly once: vertex 0
/// comes first, and undirected tours have their second vertex below their
/// last.
pub fn for_each_tour(direction: Direction, n: usize, mut visit: impl FnMut(&[usize])) {
    if n < direction.min_vertices() {
        return;
    }
    let mut order = Vec::with_capacity(n);
    for rest in (1..n).permutations(n - 1) {
        if direction == Direction::Undirected && rest[0] > rest[n - 2] {
            continue;
        }
        order.clear();
        order.push(0);
        order.extend(rest);
        visit(&order);
    }
}

/// Exact Pareto curve of tours.
pub fn tour_pareto_exact(inst: &Instance) -> Result<ParetoSet<HamiltonianCycle>> {
    tour_pareto_exact_with(inst, &OracleCaps::default())
}

pub fn tour_pareto_exact_with(inst: &Instance, caps: &OracleCaps) -> Result<ParetoSet<HamiltonianCycle>> {
    let cap = match inst.direction() {
        Direction::Directed => caps.directed_tours,
        Direction::Undirected => caps.undirected_tours,
    };
    check_cap("tour enumeration", inst.n(), cap)?;
    let mut out = ParetoSet::new(inst.k());
    let mut failure = None;
    for_each_tour(inst.direction(), inst.n(), |order| {
        if failure.is_some() {
            return;
        }
        match HamiltonianCycle::new(inst.direction(), order.to_vec()) {
            Ok(t) => {
                let w = inst.cycle_weight(order);
                let _ = out.insert(t, w);
            }
            Err(e) => failure = Some(e),
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// Every cycle cover on `n` vertices, each exactly once: directed covers are
/// the fixed-point-free permutations, undirected ones the permutations with
/// all cycles of length at least three, up to orientation.
pub fn all_cycle_covers(direction: Direction, n: usize, caps: &OracleCaps) -> Result<Vec<CycleCover>> {
    let cap = match direction {
        Direction::Directed => caps.directed_covers,
        Direction::Undirected => caps.undirected_covers,
    };
    check_cap("cover enumeration", n, cap)?;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for succ in (0..n).permutations(n) {
        if (0..n).any(|i| succ[i] == i) {
            continue;
        }
        if direction == Direction::Undirected && (0..n).any(|i| succ[succ[i]] == i) {
            continue;
        }
        let cover = CycleCover::from_successors(direction, &succ)?;
        if direction == Direction::Directed || seen.insert(cover.canonical_edges()) {
            out.push(cover);
        }
    }
    Ok(out)
}

/// Exact Pareto curve of cycle covers.
pub fn cover_pareto_exact(inst: &Instance) -> Result<ParetoSet<CycleCover>> {
    cover_pareto_exact_with(inst, &OracleCaps::default())
}

pub fn cover_pareto_exact_with(inst: &Instance, caps: &OracleCaps) -> Result<ParetoSet<CycleCover>> {
    let mut out = ParetoSet::new(inst.k());
    for cover in all_cycle_covers(inst.direction(), inst.n(), caps)? {
        let w = cover.weight(inst);
        out.insert(cover, w)?;
    }
    Ok(out)
}

/// A reference solution no candidate covers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverageWitness<T> {
    pub solution: T,
    pub vector: WeightVector,
    /// 0-based criterion on which the closest candidate falls short.
    pub failing_objective: usize,
}

/// Outcome of comparing an algorithm's output with an exact curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport<T> {
    /// FNV-1a hash of the serialized instance, when known.
    pub instance_digest: Option<String>,
    pub oracle_vectors: Vec<WeightVector>,
    pub algorithm_vectors: Vec<WeightVector>,
    pub ratio: Rational,
    pub covered: bool,
    pub witness: Option<CoverageWitness<T>>,
}

impl<T> OracleReport<T> {
    pub fn with_instance(mut self, inst: &Instance) -> Self {
        self.instance_digest = Some(instance_digest(inst));
        self
    }
}

pub fn instance_digest(inst: &Instance) -> String {
    let mut h = FnvHasher::default();
    h.write(write_instance(inst).as_bytes());
    format!("{:016x}", h.finish())
}

/// Smallest `y_i / z_i` over the criteria with `z_i > 0` (1 if there are
/// none), and the first criterion attaining it.
fn closeness(y: &WeightVector, z: &WeightVector) -> (Rational, usize) {
    let mut best = (Rational::from_integer(1), 0);
    let mut first = true;
    for (i, (&a, &b)) in y.iter().zip(z.iter()).enumerate() {
        if b == 0 {
            continue;
        }
        let r = ratio(a as i64, b as i64);
        if first || r < best.0 {
            best = (r, i);
            first = false;
        }
    }
    best
}

/// Checks that every oracle solution is `ratio`-covered by some algorithm
/// solution. An uncovered solution is reported together with the criterion
/// on which the candidate closest to covering it fails.
pub fn verify_coverage<S, T: Clone>(
    alg_out: &ParetoSet<S>,
    oracle_out: &ParetoSet<T>,
    ratio: Rational,
) -> OracleReport<T> {
    let mut witness = None;
    for (sol, z) in oracle_out.iter() {
        if alg_out.vectors().any(|y| y.covers(z, ratio).unwrap_or(false)) {
            continue;
        }
        let closest = alg_out
            .vectors()
            .map(|y| (closeness(y, z).0, y))
            .fold(None, |acc: Option<(Rational, &WeightVector)>, (r, y)| match acc {
                Some((br, _)) if br >= r => acc,
                _ => Some((r, y)),
            });
        let failing_objective = match closest {
            Some((_, y)) => y.first_uncovered(z, ratio).unwrap_or(0),
            None => 0,
        };
        witness = Some(CoverageWitness {
            solution: sol.clone(),
            vector: z.clone(),
            failing_objective,
        });
        break;
    }
    OracleReport {
        instance_digest: None,
        oracle_vectors: oracle_out.sorted_vectors(),
        algorithm_vectors: alg_out.sorted_vectors(),
        ratio,
        covered: witness.is_none(),
        witness,
    }
}

/// Limits of the tightness search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TightnessBudget {
    /// Most cycles (2-cycles or triangles) per cover.
    pub max_units: usize,
    /// Largest per-component weight; grids `0..=1`, `0..=2`, ... are tried
    /// in turn.
    pub max_grid: u64,
    /// Stop once this many covers were evaluated.
    pub max_covers: usize,
    /// Stop as soon as a cover with ratio at most this is found.
    pub stop_at: Option<Rational>,
}

impl Default for TightnessBudget {
    fn default() -> Self {
        TightnessBudget {
            max_units: 4,
            max_grid: 4,
            max_covers: 2_000_000,
            stop_at: None,
        }
    }
}

/// A light cover and the best fraction any of its decompositions keeps.
#[derive(Clone, Debug)]
pub struct TightnessWitness {
    pub direction: Direction,
    pub k: usize,
    pub cover: CycleCover,
    pub weights: EdgeWeightMap,
    /// Max over decompositions of the min over criteria of `w_i(P)/w_i(C)`.
    pub best_ratio: Rational,
    /// Lightness threshold the cover satisfies.
    pub alpha: Rational,
    pub covers_examined: usize,
    /// Whether the search stopped at `max_covers`.
    pub budget_exhausted: bool,
}

/// Searches covers made of `max_units` 2-cycles (directed) or triangles
/// (undirected) with small integer weights, all of whose edges are light at
/// the guaranteed threshold, for one minimizing the best decomposition
/// ratio. Covers with a zero criterion total are skipped.
pub fn search_tightness_witness(
    direction: Direction,
    k: usize,
    budget: &TightnessBudget,
) -> Result<TightnessWitness> {
    if k == 0 {
        return Err(Error::Usage("k must be positive".into()));
    }
    let alpha = crate::decompose::guaranteed_alpha(direction, k);
    let size = direction.min_cycle_len();
    let mut best: Option<(Rational, Vec<Vec<WeightVector>>)> = None;
    let mut examined = 0usize;
    let mut budget_exhausted = false;
    'grid: for g in 1..=budget.max_grid {
        let types: Vec<WeightVector> = (0..k)
            .map(|_| 0..=g)
            .multi_cartesian_product()
            .map(WeightVector::new)
            .collect();
        let units: Vec<Vec<usize>> = (0..types.len()).combinations_with_replacement(size).collect();
        for m in 1..=budget.max_units {
            for cover in (0..units.len()).combinations_with_replacement(m) {
                if examined >= budget.max_covers {
                    budget_exhausted = true;
                    break 'grid;
                }
                examined += 1;
                let cycles: Vec<Vec<&WeightVector>> =
                    cover.iter().map(|&u| units[u].iter().map(|&t| &types[t]).collect()).collect();
                let Some(r) = best_decomposition(&cycles, k, alpha) else {
                    continue;
                };
                if best.as_ref().is_none_or(|(b, _)| r < *b) {
                    let owned = cycles.iter().map(|c| c.iter().map(|&w| w.clone()).collect()).collect();
                    best = Some((r, owned));
                    if budget.stop_at.is_some_and(|s| r <= s) {
                        break 'grid;
                    }
                }
            }
        }
    }
    let (best_ratio, cycles) =
        best.ok_or_else(|| Error::Usage("no light cover within the search budget".into()))?;
    let mut weights = EdgeWeightMap::new(direction, k);
    let mut vertex_cycles = Vec::new();
    for (c, edges) in cycles.iter().enumerate() {
        let base = c * size;
        vertex_cycles.push((base..base + size).collect::<Vec<_>>());
        for (p, w) in edges.iter().enumerate() {
            weights.set(base + p, base + (p + 1) % size, w.clone())?;
        }
    }
    let cover = CycleCover::new(direction, cycles.len() * size, vertex_cycles)?;
    Ok(TightnessWitness {
        direction,
        k,
        cover,
        weights,
        best_ratio,
        alpha,
        covers_examined: examined,
        budget_exhausted,
    })
}

/// Best ratio over all ways of dropping one edge per cycle, or `None` if
/// some criterion sums to zero or an edge is heavy.
fn best_decomposition(cycles: &[Vec<&WeightVector>], k: usize, alpha: Rational) -> Option<Rational> {
    let mut total = WeightVector::zeros(k);
    for w in cycles.iter().flatten() {
        total += *w;
    }
    if total.iter().any(|&t| t == 0) {
        return None;
    }
    if !cycles.iter().flatten().all(|w| w.within(&total, alpha)) {
        return None;
    }
    cycles
        .iter()
        .map(|c| 0..c.len())
        .multi_cartesian_product()
        .map(|drops| {
            let mut kept = total.clone();
            for (c, &j) in cycles.iter().zip(&drops) {
                for (x, y) in kept.components_mut().iter_mut().zip(c[j].iter()) {
                    *x -= y;
                }
            }
            kept.iter()
                .zip(total.iter())
                .map(|(&a, &b)| ratio(a as i64, b as i64))
                .min()
                .expect("k >= 1")
        })
        .max()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tour_counts() {
        let mut c = 0;
        for_each_tour(Direction::Directed, 5, |_| c += 1);
        assert_eq!(c, 24);
        c = 0;
        for_each_tour(Direction::Undirected, 6, |_| c += 1);
        assert_eq!(c, 60);
        c = 0;
        for_each_tour(Direction::Directed, 2, |_| c += 1);
        assert_eq!(c, 1);
    }

    #[test]
    fn cover_counts() {
        let caps = OracleCaps::default();
        assert_eq!(all_cycle_covers(Direction::Directed, 2, &caps).unwrap().len(), 1);
        // derangements D4, D5
        assert_eq!(all_cycle_covers(Direction::Directed, 4, &caps).unwrap().len(), 9);
        assert_eq!(all_cycle_covers(Direction::Directed, 5, &caps).unwrap().len(), 44);
        // 60 Hamiltonian cycles plus 10 splits into two triangles
        assert_eq!(all_cycle_covers(Direction::Undirected, 6, &caps).unwrap().len(), 70);
        assert!(all_cycle_covers(Direction::Directed, 9, &caps).is_err());
    }

    #[test]
    fn three_vertex_tours() {
        let inst = Instance::from_fn(Direction::Directed, 3, 2, |c, i, j| match (c, i, j) {
            (0, 0, 1) | (1, 0, 2) => 5,
            _ => 1,
        }).unwrap();
        let set = tour_pareto_exact(&inst).unwrap();
        assert_eq!(set.len(), 2);
    }

    #[test]
    fn witness_names_failing_objective() {
        let mut alg = ParetoSet::new(2);
        alg.insert("a", WeightVector::new(vec![10, 1])).unwrap();
        let mut oracle = ParetoSet::new(2);
        oracle.insert("x", WeightVector::new(vec![10, 1])).unwrap();
        oracle.insert("y", WeightVector::new(vec![1, 10])).unwrap();
        let r = verify_coverage(&alg, &oracle, ratio(1, 2));
        assert!(!r.covered);
        let w = r.witness.unwrap();
        assert_eq!(w.solution, "y");
        assert_eq!(w.failing_objective, 1);
        let r = verify_coverage(&oracle, &oracle, ratio(1, 1));
        assert!(r.covered);
    }

    #[test]
    fn single_criterion_tightness() {
        let w = search_tightness_witness(Direction::Directed, 1, &TightnessBudget { max_units: 2, max_grid: 2, ..Default::default() }).unwrap();
        assert_eq!(w.best_ratio, ratio(1, 2));
    }
}
