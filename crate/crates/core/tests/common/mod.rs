//! Brute-force reference computations shared by the integration tests.
//! Nothing here calls the library's own enumeration or Pareto code.

#![allow(dead_code)]

use mctsp::{CycleCover, Direction, EdgeWeightMap, Instance, WeightVector};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Every permutation of `items`, by Heap's algorithm.
pub fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    let mut a = items.to_vec();
    let mut out = vec![a.clone()];
    let n = a.len();
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push(a.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

pub fn closed_walk_weight(inst: &Instance, order: &[usize]) -> Vec<u64> {
    (0..inst.k())
        .map(|c| {
            (0..order.len())
                .map(|p| inst.weight(c, order[p], order[(p + 1) % order.len()]))
                .sum()
        })
        .collect()
}

/// Weight vectors of all tours (undirected tours appear twice, which does
/// not matter for Pareto fronts).
pub fn all_tour_vectors(inst: &Instance) -> Vec<Vec<u64>> {
    let n = inst.n();
    let rest: Vec<usize> = (1..n).collect();
    permutations(&rest)
        .into_iter()
        .map(|p| {
            let mut order = vec![0];
            order.extend(p);
            closed_walk_weight(inst, &order)
        })
        .collect()
}

/// Weight vectors of all cycle covers, from successor functions.
pub fn all_cover_vectors(inst: &Instance) -> Vec<Vec<u64>> {
    let n = inst.n();
    let min_len = match inst.direction() {
        Direction::Directed => 2,
        Direction::Undirected => 3,
    };
    let all: Vec<usize> = (0..n).collect();
    permutations(&all)
        .into_iter()
        .filter(|succ| {
            (0..n).all(|start| {
                let mut len = 1;
                let mut v = succ[start];
                while v != start {
                    v = succ[v];
                    len += 1;
                }
                len >= min_len
            })
        })
        .map(|succ| {
            (0..inst.k())
                .map(|c| (0..n).map(|i| inst.weight(c, i, succ[i])).sum())
                .collect()
        })
        .collect()
}

fn dominates(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x >= y) && a != b
}

/// Sorted, deduplicated nondominated vectors.
pub fn pareto_front(vectors: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let mut out: Vec<Vec<u64>> = vectors
        .iter()
        .filter(|v| !vectors.iter().any(|w| dominates(w, v)))
        .cloned()
        .collect();
    out.sort();
    out.dedup();
    out
}

/// `y >= (num/den) * z` componentwise, in integers.
pub fn scaled_ge(y: &[u64], num: u64, den: u64, z: &[u64]) -> bool {
    y.iter()
        .zip(z)
        .all(|(&a, &b)| a as u128 * den as u128 >= num as u128 * b as u128)
}

/// Whether every reference vector is `num/den`-covered by a candidate.
pub fn covers_all(candidates: &[Vec<u64>], num: u64, den: u64, reference: &[Vec<u64>]) -> bool {
    reference
        .iter()
        .all(|z| candidates.iter().any(|y| scaled_ge(y, num, den, z)))
}

/// Whether `order` visits every vertex of `0..n` once.
pub fn is_tour(order: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    order.len() == n && order.iter().all(|&v| v < n && !std::mem::replace(&mut seen[v], true))
}

pub struct RandomCover {
    pub cover: CycleCover,
    pub weights: EdgeWeightMap,
    /// The edges with their weights, as the reference copy.
    pub table: Vec<((usize, usize), Vec<u64>)>,
}

/// Random cover with cycles of `min_len..=min_len+extra` vertices and
/// weights in `0..=20`. With `light = Some((p, q))` weights are lowered
/// until every edge is at most `p/q` of the cover in every criterion.
pub fn random_cover(
    rng: &mut ChaCha8Rng,
    direction: Direction,
    k: usize,
    cycles: usize,
    min_len: usize,
    extra: usize,
    light: Option<(u64, u64)>,
) -> RandomCover {
    let lens: Vec<usize> = (0..cycles).map(|_| min_len + rng.gen_range(0..=extra)).collect();
    let n: usize = lens.iter().sum();
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(rng);
    let mut vertex_cycles = Vec::new();
    let mut next = 0;
    for len in lens {
        vertex_cycles.push(labels[next..next + len].to_vec());
        next += len;
    }
    let cover = CycleCover::new(direction, n, vertex_cycles).expect("valid cover");
    let mut table: Vec<((usize, usize), Vec<u64>)> = cover
        .edges()
        .into_iter()
        .map(|e| (e, (0..k).map(|_| rng.gen_range(0..=20)).collect()))
        .collect();
    if let Some((num, den)) = light {
        // lower offending weights until every edge is light
        loop {
            let mut changed = false;
            for i in 0..k {
                let total: u64 = table.iter().map(|(_, w)| w[i]).sum();
                for (_, w) in table.iter_mut() {
                    if w[i] * den > num * total {
                        w[i] = num * total / den;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
    }
    let mut weights = EdgeWeightMap::new(direction, k);
    for ((a, b), w) in &table {
        weights.set(*a, *b, WeightVector::new(w.clone())).expect("dimension");
    }
    RandomCover { cover, weights, table }
}

/// Weight of `edges` looked up in `table`, each table entry used once.
pub fn table_weight(table: &[((usize, usize), Vec<u64>)], edges: &[(usize, usize)], undirected: bool, k: usize) -> Vec<u64> {
    let mut out = vec![0u64; k];
    let mut remaining: Vec<&((usize, usize), Vec<u64>)> = table.iter().collect();
    for &(a, b) in edges {
        let pos = remaining
            .iter()
            .position(|((x, y), _)| (*x, *y) == (a, b) || (undirected && (*x, *y) == (b, a)))
            .expect("path edge belongs to the cover");
        let (_, w) = remaining.swap_remove(pos);
        for (o, x) in out.iter_mut().zip(w) {
            *o += x;
        }
    }
    out
}
