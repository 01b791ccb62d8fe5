use std::collections::HashSet;

use crate::cover::{check_paths, HamiltonianCycle, PathCollection};
use crate::error::{Error, Result};
use crate::instance::{Direction, Edge};

/// Joins vertex-disjoint paths covering `0..n` into one tour: paths are
/// visited by ascending minimum vertex and the end of each is linked to the
/// start of the next. Directed paths keep their orientation.
pub fn patch_paths(direction: Direction, n: usize, paths: &[Vec<usize>]) -> Result<HamiltonianCycle> {
    let mut seen = vec![false; n];
    for p in paths {
        if p.is_empty() {
            return Err(Error::contract("empty path"));
        }
        for &v in p {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(Error::contract(format!("paths are not vertex-disjoint at vertex {v}")));
            }
        }
    }
    if let Some(v) = seen.iter().position(|s| !s) {
        return Err(Error::contract(format!("vertex {v} is not on any path")));
    }
    let mut sorted: Vec<&Vec<usize>> = paths.iter().collect();
    sorted.sort_by_key(|p| p.iter().min().copied());
    let order: Vec<usize> = sorted.into_iter().flatten().copied().collect();
    HamiltonianCycle::new(direction, order)
}

/// [`patch_paths`] applied to a decomposition.
pub fn patch_collection(p: &PathCollection) -> Result<HamiltonianCycle> {
    let parent = p.parent();
    patch_paths(parent.direction(), parent.n(), &p.paths())
}

/// Calls `visit` with the vertex order of every undirected Hamiltonian cycle
/// that contains all of `fixed` and whose remaining edges satisfy `allowed`.
///
/// `fixed` must be a path forest or a Hamiltonian cycle. Orders may repeat
/// (a cycle and its reversal); callers canonicalize.
pub(crate) fn undirected_completions(
    n: usize,
    fixed: &[Edge],
    allowed: impl Fn(usize, usize) -> bool,
    mut visit: impl FnMut(&[usize]),
) {
    if fixed.len() == n {
        // already a Hamiltonian cycle (or not a valid input at all)
        let cover = crate::cover::paths_of(Direction::Undirected, n, &fixed[..n - 1]);
        if cover.len() == 1 {
            let order = &cover[0];
            let (a, b) = fixed[n - 1];
            let (s, t) = (order[0], order[n - 1]);
            if (a, b) == (s, t) || (a, b) == (t, s) {
                visit(order);
            }
        }
        return;
    }
    if check_paths(Direction::Undirected, n, fixed).is_err() {
        return;
    }
    let comps = crate::cover::paths_of(Direction::Undirected, n, fixed);
    let mut used = vec![false; comps.len()];
    used[0] = true;
    let mut order: Vec<usize> = comps[0].clone();
    fn go(
        comps: &[Vec<usize>],
        used: &mut [bool],
        order: &mut Vec<usize>,
        placed: usize,
        allowed: &dyn Fn(usize, usize) -> bool,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        let last = *order.last().expect("nonempty");
        if placed == comps.len() {
            if allowed(last, order[0]) {
                visit(order);
            }
            return;
        }
        for t in 1..comps.len() {
            if used[t] {
                continue;
            }
            let c = &comps[t];
            let orientations: &[bool] = if c.len() == 1 { &[false] } else { &[false, true] };
            for &rev in orientations {
                let first = if rev { c[c.len() - 1] } else { c[0] };
                if !allowed(last, first) {
                    continue;
                }
                used[t] = true;
                let len = order.len();
                if rev {
                    order.extend(c.iter().rev());
                } else {
                    order.extend(c.iter());
                }
                go(comps, used, order, placed + 1, allowed, visit);
                order.truncate(len);
                used[t] = false;
            }
        }
    }
    go(&comps, &mut used, &mut order, 1, &allowed, &mut visit);
}

/// Distinct tours among the completions of `fixed`.
pub(crate) fn distinct_completions(
    n: usize,
    fixed: &[Edge],
    allowed: impl Fn(usize, usize) -> bool,
) -> Vec<HamiltonianCycle> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    undirected_completions(n, fixed, allowed, |order| {
        if let Ok(t) = HamiltonianCycle::new(Direction::Undirected, order.to_vec()) {
            if seen.insert(t.clone()) {
                out.push(t);
            }
        }
    });
    out
}
