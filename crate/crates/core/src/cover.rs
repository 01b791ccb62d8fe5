//! Cycle covers, path collections carved from them, and Hamiltonian cycles.

use std::collections::{HashMap, HashSet};
use std::fmt;


use crate::error::{Error, Result};
use crate::instance::{Direction, Edge, EdgeWeights};
use crate::weight::WeightVector;

fn undirected_key((a, b): Edge) -> Edge {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Vertex-disjoint cycles covering all `n` vertices.
///
/// Each cycle is an ordered vertex sequence; edge `j` of a cycle runs from
/// position `j` to position `j + 1` (wrapping around).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycleCover {
    direction: Direction,
    n: usize,
    cycles: Vec<Vec<usize>>,
}

impl CycleCover {
    pub fn new(direction: Direction, n: usize, cycles: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n];
        for c in &cycles {
            if c.len() < direction.min_cycle_len() {
                return Err(Error::structure(format!(
                    "{direction} cycle {c:?} is shorter than {}",
                    direction.min_cycle_len()
                )));
            }
            for &v in c {
                if v >= n {
                    return Err(Error::structure(format!("vertex {v} out of range 0..{n}")));
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::structure(format!("vertex {v} appears twice in the cover")));
                }
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(Error::structure(format!("vertex {v} is not covered")));
        }
        Ok(CycleCover {
            direction,
            n,
            cycles,
        })
    }

    /// Decodes a successor map (`succ[v]` follows `v`) into its cycles,
    /// each starting at its smallest vertex.
    pub fn from_successors(direction: Direction, succ: &[usize]) -> Result<Self> {
        let n = succ.len();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut c = Vec::new();
            let mut v = start;
            while !seen[v] {
                seen[v] = true;
                c.push(v);
                v = *succ.get(v).ok_or_else(|| Error::structure("successor out of range"))?;
                if v >= n {
                    return Err(Error::structure("successor out of range"));
                }
            }
            if v != start {
                return Err(Error::structure("successor map is not a permutation"));
            }
            cycles.push(c);
        }
        CycleCover::new(direction, n, cycles)
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    /// Edges of cycle `c` in cycle order.
    pub fn cycle_edges(&self, c: usize) -> Vec<Edge> {
        let cyc = &self.cycles[c];
        (0..cyc.len())
            .map(|j| (cyc[j], cyc[(j + 1) % cyc.len()]))
            .collect()
    }

    /// All edges, cycle by cycle.
    pub fn edges(&self) -> Vec<Edge> {
        (0..self.cycles.len()).flat_map(|c| self.cycle_edges(c)).collect()
    }

    pub fn weight(&self, w: &impl EdgeWeights) -> WeightVector {
        w.weight_of(self.edges().iter())
    }

    /// Whether the cover is a single cycle through every vertex.
    pub fn is_hamiltonian(&self) -> bool {
        self.cycles.len() == 1
    }

    /// Canonical edge set: sorted, undirected edges normalized.
    pub fn canonical_edges(&self) -> Vec<Edge> {
        let mut e: Vec<Edge> = self.edges();
        if self.direction == Direction::Undirected {
            e = e.into_iter().map(undirected_key).collect();
        }
        e.sort_unstable();
        e
    }
}

impl fmt::Debug for CycleCover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycleCover[{}; ", self.direction)?;
        for (i, c) in self.cycles.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c:?}")?;
        }
        write!(f, "]")
    }
}

/// A subset of a cover's edges forming vertex-disjoint simple paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathCollection {
    edges: Vec<Edge>,
    parent: CycleCover,
}

impl PathCollection {
    /// Validates that `edges` is a subset of `parent`'s edges forming
    /// vertex-disjoint simple paths.
    pub fn new(parent: &CycleCover, edges: Vec<Edge>) -> Result<Self> {
        let directed = parent.direction() == Direction::Directed;
        let norm = |e: Edge| if directed { e } else { undirected_key(e) };
        let mut parent_edges: HashMap<Edge, usize> = HashMap::new();
        for e in parent.edges() {
            *parent_edges.entry(norm(e)).or_default() += 1;
        }
        for &e in &edges {
            match parent_edges.get_mut(&norm(e)) {
                Some(c) if *c > 0 => *c -= 1,
                _ => {
                    return Err(Error::contract(format!(
                        "edge {e:?} is not an (unused) edge of the parent cover"
                    )))
                }
            }
        }
        check_paths(parent.direction(), parent.n(), &edges)?;
        Ok(PathCollection {
            edges,
            parent: parent.clone(),
        })
    }

    /// Keeps every edge of `parent` except those at the given
    /// `(cycle, position)` slots.
    pub fn removing(parent: &CycleCover, removed: &HashSet<(usize, usize)>) -> Result<Self> {
        let mut edges = Vec::new();
        for c in 0..parent.cycles().len() {
            for (j, e) in parent.cycle_edges(c).into_iter().enumerate() {
                if !removed.contains(&(c, j)) {
                    edges.push(e);
                }
            }
        }
        PathCollection::new(parent, edges)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn parent(&self) -> &CycleCover {
        &self.parent
    }

    pub fn weight(&self, w: &impl EdgeWeights) -> WeightVector {
        w.weight_of(self.edges.iter())
    }

    /// The paths as vertex sequences, isolated vertices included as
    /// single-vertex paths. Directed paths follow arc orientation; undirected
    /// paths start at their smaller endpoint. Sorted by first vertex.
    pub fn paths(&self) -> Vec<Vec<usize>> {
        paths_of(self.parent.direction(), self.parent.n(), &self.edges)
    }
}

/// Checks that `edges` form vertex-disjoint simple paths on `n` vertices.
pub(crate) fn check_paths(direction: Direction, n: usize, edges: &[Edge]) -> Result<()> {
    let mut outdeg = vec![0usize; n];
    let mut indeg = vec![0usize; n];
    for &(a, b) in edges {
        if a >= n || b >= n || a == b {
            return Err(Error::contract(format!("invalid edge ({a},{b})")));
        }
        outdeg[a] += 1;
        indeg[b] += 1;
    }
    match direction {
        Direction::Directed => {
            if (0..n).any(|v| outdeg[v] > 1 || indeg[v] > 1) {
                return Err(Error::contract("paths share a vertex"));
            }
        }
        Direction::Undirected => {
            if (0..n).any(|v| outdeg[v] + indeg[v] > 2) {
                return Err(Error::contract("paths share a vertex"));
            }
        }
    }
    // acyclic: a forest of paths has exactly n - (#components) edges; use
    // union-find to detect a cycle
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return Err(Error::contract("edges close a cycle"));
        }
        parent[ra] = rb;
    }
    Ok(())
}

pub(crate) fn paths_of(direction: Direction, n: usize, edges: &[Edge]) -> Vec<Vec<usize>> {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut has_pred = vec![false; n];
    for &(a, b) in edges {
        adj[a].push(b);
        has_pred[b] = true;
        if direction == Direction::Undirected {
            adj[b].push(a);
        }
    }
    let mut visited = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if visited[s] {
            continue;
        }
        let is_start = match direction {
            Direction::Directed => !has_pred[s],
            Direction::Undirected => adj[s].len() <= 1,
        };
        if !is_start {
            continue;
        }
        let mut path = vec![s];
        visited[s] = true;
        let mut cur = s;
        while let Some(&nx) = adj[cur].iter().find(|&&x| !visited[x]) {
            visited[nx] = true;
            path.push(nx);
            cur = nx;
        }
        out.push(path);
    }
    out
}

/// A tour through all vertices, stored in canonical rotation (starting at
/// vertex 0; undirected tours oriented so the second vertex is smaller than
/// the last).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HamiltonianCycle {
    direction: Direction,
    order: Vec<usize>,
}

impl HamiltonianCycle {
    pub fn new(direction: Direction, order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        if n < direction.min_vertices() {
            return Err(Error::structure(format!(
                "a {direction} tour needs at least {} vertices",
                direction.min_vertices()
            )));
        }
        let mut seen = vec![false; n];
        for &v in &order {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(Error::structure(format!(
                    "{order:?} is not a permutation of 0..{n}"
                )));
            }
        }
        let mut order = order;
        let zero = order.iter().position(|&v| v == 0).unwrap_or(0);
        order.rotate_left(zero);
        if direction == Direction::Undirected && order[1] > order[n - 1] {
            order[1..].reverse();
        }
        Ok(HamiltonianCycle { direction, order })
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn edges(&self) -> Vec<Edge> {
        let n = self.order.len();
        (0..n)
            .map(|i| (self.order[i], self.order[(i + 1) % n]))
            .collect()
    }

    /// Whether the tour traverses `a -> b` (or `{a, b}` when undirected).
    pub fn contains_edge(&self, a: usize, b: usize) -> bool {
        let n = self.order.len();
        (0..n).any(|i| {
            let (x, y) = (self.order[i], self.order[(i + 1) % n]);
            (x, y) == (a, b) || (self.direction == Direction::Undirected && (y, x) == (a, b))
        })
    }

    pub fn weight(&self, w: &impl EdgeWeights) -> WeightVector {
        w.weight_of(self.edges().iter())
    }

    pub fn as_cover(&self) -> CycleCover {
        CycleCover {
            direction: self.direction,
            n: self.order.len(),
            cycles: vec![self.order.clone()],
        }
    }
}

impl fmt::Debug for HamiltonianCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tour{:?}", self.order)
    }
}
