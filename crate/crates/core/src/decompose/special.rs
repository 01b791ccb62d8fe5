//! Closed-form decompositions for special cases.

use std::collections::HashSet;

use super::lightweight::check_light;
use super::normalize::normalize;
use crate::cover::{CycleCover, PathCollection};
use crate::error::{Error, Result};
use crate::instance::{Direction, EdgeWeights};
use crate::weight::{ratio, WeightVector};

/// Lowest position maximizing `key`.
fn argmax_by<T: Ord + Copy>(len: usize, key: impl Fn(usize) -> T) -> usize {
    let mut best = 0;
    for p in 1..len {
        if key(p) > key(best) {
            best = p;
        }
    }
    best
}

fn require_undirected(cover: &CycleCover) -> Result<()> {
    if cover.direction() != Direction::Undirected {
        return Err(Error::contract("this decomposition needs an undirected cover"));
    }
    Ok(())
}

/// Keeps at least half of both criteria of an undirected cover, with no
/// lightness requirement: from every triangle of the normalized cover drop
/// the lowest-positioned edge that is neither the first-criterion nor the
/// second-criterion maximum.
pub fn decompose_bicriteria_undirected(
    cover: &CycleCover,
    w: &impl EdgeWeights,
) -> Result<PathCollection> {
    if w.criteria() != 2 {
        return Err(Error::dimension(2, w.criteria()));
    }
    require_undirected(cover)?;
    let nc = normalize(cover, w);
    let dropped: Vec<usize> = nc
        .units()
        .iter()
        .map(|u| {
            let m1 = argmax_by(3, |p| u.edges[p].weight[0]);
            let m2 = argmax_by(3, |p| u.edges[p].weight[1]);
            (0..3).find(|&p| p != m1 && p != m2).expect("three edges, two maxima")
        })
        .collect();
    nc.translate(cover, &dropped)
}

/// Intermediate sums of the three-criteria construction, for inspection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K3Trace {
    /// Weight of the third-criterion maxima, one per triangle.
    pub anchor: WeightVector,
    /// The two balanced halves of the remaining edges.
    pub first_half: WeightVector,
    pub second_half: WeightVector,
    /// Whether the first half was chosen.
    pub chose_first: bool,
}

/// Three-criteria decomposition of a light undirected cover keeping a third
/// of every criterion.
///
/// Each triangle contributes its third-criterion maximum to an anchor set.
/// The two remaining edges of each triangle are split between two halves so
/// that the second criterion stays balanced (the heavier edge goes to the
/// currently lighter half), and the half with more first-criterion weight is
/// kept alongside the anchor set.
pub fn decompose_k3_undirected(cover: &CycleCover, w: &impl EdgeWeights) -> Result<PathCollection> {
    decompose_k3_undirected_traced(cover, w).map(|(p, _)| p)
}

pub fn decompose_k3_undirected_traced(
    cover: &CycleCover,
    w: &impl EdgeWeights,
) -> Result<(PathCollection, K3Trace)> {
    if w.criteria() != 3 {
        return Err(Error::dimension(3, w.criteria()));
    }
    require_undirected(cover)?;
    check_light(cover, w, ratio(1, 3))?;
    let nc = normalize(cover, w);
    let mut anchor = WeightVector::zeros(3);
    let mut q = WeightVector::zeros(3);
    let mut q2 = WeightVector::zeros(3);
    // per unit: (edge kept in the first half, edge kept in the second half)
    let mut halves = Vec::with_capacity(nc.units().len());
    for u in nc.units() {
        let top = argmax_by(3, |p| u.edges[p].weight[2]);
        anchor += &u.edges[top].weight;
        let rest: Vec<usize> = (0..3).filter(|&p| p != top).collect();
        let (light, heavy) = if u.edges[rest[0]].weight[1] > u.edges[rest[1]].weight[1] {
            (rest[1], rest[0])
        } else {
            (rest[0], rest[1])
        };
        let (to_q, to_q2) = if q[1] >= q2[1] {
            (light, heavy)
        } else {
            (heavy, light)
        };
        q += &u.edges[to_q].weight;
        q2 += &u.edges[to_q2].weight;
        halves.push((to_q, to_q2));
    }
    let chose_first = q[0] >= q2[0];
    let dropped: Vec<usize> = halves
        .iter()
        .map(|&(a, b)| if chose_first { b } else { a })
        .collect();
    let p = nc.translate(cover, &dropped)?;
    Ok((
        p,
        K3Trace {
            anchor,
            first_half: q,
            second_half: q2,
            chose_first,
        },
    ))
}

/// Keeps at least half of every criterion of a cover whose cycles all have
/// at least `k + 1` edges: in each cycle mark one maximum edge per criterion
/// and drop the lowest-positioned unmarked edge.
pub fn decompose_long_cycles(cover: &CycleCover, w: &impl EdgeWeights) -> Result<PathCollection> {
    let k = w.criteria();
    let mut removed = HashSet::new();
    for c in 0..cover.cycles().len() {
        let edges: Vec<WeightVector> = cover
            .cycle_edges(c)
            .into_iter()
            .map(|(a, b)| w.edge_weight(a, b))
            .collect();
        if edges.len() < k + 1 {
            return Err(Error::contract(format!(
                "cycle {c} has {} edges; {k} criteria need at least {}",
                edges.len(),
                k + 1
            )));
        }
        let marked: HashSet<usize> = (0..k)
            .map(|i| argmax_by(edges.len(), |p| edges[p][i]))
            .collect();
        let drop = (0..edges.len())
            .find(|p| !marked.contains(p))
            .expect("more edges than criteria");
        removed.insert((c, drop));
    }
    PathCollection::removing(cover, &removed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::EdgeWeightMap;

    fn cover_with(direction: Direction, cycles: Vec<Vec<usize>>, ws: &[Vec<u64>]) -> (CycleCover, EdgeWeightMap) {
        let n = cycles.iter().map(|c| c.len()).sum();
        let cover = CycleCover::new(direction, n, cycles).unwrap();
        let k = ws[0].len();
        let mut m = EdgeWeightMap::new(direction, k);
        for ((a, b), w) in cover.edges().into_iter().zip(ws) {
            m.set(a, b, WeightVector::from(w.clone())).unwrap();
        }
        (cover, m)
    }

    #[test]
    fn bicriteria_examples() {
        // all three removals of (2,0),(0,2),(1,1) checked by hand: only
        // dropping (1,1) keeps (2,2)
        let (c, w) = cover_with(Direction::Undirected, vec![vec![0, 1, 2]], &[vec![2, 0], vec![0, 2], vec![1, 1]]);
        let p = decompose_bicriteria_undirected(&c, &w).unwrap();
        assert_eq!(p.weight(&w), WeightVector::from([2, 2]));

        let (c, w) = cover_with(Direction::Undirected, vec![vec![0, 1, 2]], &[vec![5, 0], vec![0, 5], vec![0, 0]]);
        let p = decompose_bicriteria_undirected(&c, &w).unwrap();
        assert_eq!(p.weight(&w), WeightVector::from([5, 5]));

        let (c, w) = cover_with(Direction::Undirected, vec![vec![0, 1, 2]], &[vec![1, 1], vec![1, 1], vec![1, 1]]);
        let p = decompose_bicriteria_undirected(&c, &w).unwrap();
        assert_eq!(p.weight(&w), WeightVector::from([2, 2]));
        // both maxima are edge 0 on ties, so edge 1 is dropped
        assert_eq!(p.edges(), &[(0, 1), (2, 0)]);
    }

    #[test]
    fn bicriteria_rejects_wrong_k() {
        let (c, w) = cover_with(Direction::Undirected, vec![vec![0, 1, 2]], &[vec![1], vec![1], vec![1]]);
        assert!(matches!(decompose_bicriteria_undirected(&c, &w), Err(Error::Dimension { .. })));
    }

    #[test]
    fn k3_symmetric_triangle() {
        let (c, w) = cover_with(Direction::Undirected, vec![vec![0, 1, 2]], &[vec![1, 1, 1], vec![1, 1, 1], vec![1, 1, 1]]);
        let p = decompose_k3_undirected(&c, &w).unwrap();
        assert_eq!(p.edges().len(), 2);
        assert_eq!(p.weight(&w), WeightVector::from([2, 2, 2]));
    }

    #[test]
    fn k3_rejects_heavy_edge() {
        let (c, w) = cover_with(Direction::Undirected, vec![vec![0, 1, 2]], &[vec![3, 1, 1], vec![0, 1, 1], vec![0, 1, 1]]);
        assert!(matches!(decompose_k3_undirected(&c, &w), Err(Error::Contract(_))));
    }

    #[test]
    fn long_cycle_examples() {
        let (c, w) = cover_with(
            Direction::Directed,
            vec![vec![0, 1, 2, 3]],
            &[vec![4, 0, 0], vec![0, 4, 0], vec![0, 0, 4], vec![1, 1, 1]],
        );
        let p = decompose_long_cycles(&c, &w).unwrap();
        assert_eq!(p.weight(&w), WeightVector::from([4, 4, 4]));

        let (c, w) = cover_with(Direction::Directed, vec![vec![0, 1], vec![2, 3]], &[vec![3], vec![1], vec![2], vec![2]]);
        let p = decompose_long_cycles(&c, &w).unwrap();
        // ties keep the first edge marked
        assert_eq!(p.weight(&w), WeightVector::from([5]));

        let (c, w) = cover_with(Direction::Directed, vec![vec![0, 1]], &[vec![1, 0], vec![0, 1]]);
        assert!(matches!(decompose_long_cycles(&c, &w), Err(Error::Contract(_))));
    }

    #[test]
    fn long_cycles_agree_with_bicriteria_on_triangles() {
        let ws = [vec![3, 1], vec![2, 2], vec![1, 3], vec![0, 0], vec![5, 1], vec![1, 1]];
        let (c, w) = cover_with(Direction::Undirected, vec![vec![0, 1, 2], vec![3, 4, 5]], &ws);
        assert_eq!(
            decompose_long_cycles(&c, &w).unwrap().edges(),
            decompose_bicriteria_undirected(&c, &w).unwrap().edges()
        );
    }
}
