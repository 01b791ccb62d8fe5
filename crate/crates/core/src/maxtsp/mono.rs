use std::collections::HashSet;

use super::patch::patch_collection;
use crate::cover::{HamiltonianCycle, PathCollection};
use crate::cyclecover::max_cover_scalar;
use crate::error::{Error, Result};
use crate::instance::{Direction, Instance};

fn cover_and_patch(inst: &Instance, direction: Direction) -> Result<HamiltonianCycle> {
    if inst.direction() != direction {
        return Err(Error::contract(format!("expected a {} instance", direction.as_str())));
    }
    if inst.k() != 1 {
        return Err(Error::dimension(1, inst.k()));
    }
    let (cover, _) = max_cover_scalar(inst, 0)?;
    let mut removed = HashSet::new();
    for c in 0..cover.cycles().len() {
        let lightest = cover
            .cycle_edges(c)
            .into_iter()
            .map(|(a, b)| inst.weight(0, a, b))
            .enumerate()
            .min_by_key(|&(j, w)| (w, j))
            .map(|(j, _)| j)
            .expect("cycles are nonempty");
        removed.insert((c, lightest));
    }
    patch_collection(&PathCollection::removing(&cover, &removed)?)
}

/// Single-criterion Max-ATSP at ratio 1/2: a maximum cycle cover loses its
/// lightest edge per cycle (at most half of each cycle, as cycles have at
/// least two edges) and the paths are patched into a tour.
pub fn mono_maxatsp_half(inst: &Instance) -> Result<HamiltonianCycle> {
    cover_and_patch(inst, Direction::Directed)
}

/// Single-criterion Max-STSP at ratio 2/3, by the same pipeline: undirected
/// cycles have at least three edges.
pub fn mono_maxstsp_twothirds_style(inst: &Instance) -> Result<HamiltonianCycle> {
    cover_and_patch(inst, Direction::Undirected)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_vertices() {
        let inst = Instance::new(Direction::Directed, vec![vec![vec![0, 3], vec![5, 0]]]).unwrap();
        let t = mono_maxatsp_half(&inst).unwrap();
        assert_eq!(t.weight(&inst).components(), &[8]);
    }

    #[test]
    fn two_triangles() {
        // heavy triangles {0,1,2} and {3,4,5}
        let inst = Instance::from_fn(Direction::Undirected, 6, 1, |_, i, j| {
            if (i < 3) == (j < 3) { 10 } else { 1 }
        })
        .unwrap();
        let t = mono_maxstsp_twothirds_style(&inst).unwrap();
        let w = t.weight(&inst).components()[0];
        assert!(3 * w >= 2 * 60, "{w}");
        assert_eq!(w, 42);
    }

    #[test]
    fn rejects_wrong_shape() {
        let inst = Instance::from_fn(Direction::Directed, 3, 2, |_, _, _| 1).unwrap();
        assert!(mono_maxatsp_half(&inst).is_err());
        let inst = Instance::from_fn(Direction::Directed, 3, 1, |_, _, _| 1).unwrap();
        assert!(mono_maxstsp_twothirds_style(&inst).is_err());
    }
}
