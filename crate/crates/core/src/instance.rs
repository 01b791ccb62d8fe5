//! Complete graphs with `k` nonnegative integer weight functions.

use std::collections::HashMap;
use std::fmt;


use crate::error::{Error, Result};
use crate::weight::WeightVector;

/// An ordered pair of vertices. Undirected edges use the same type; their
/// orientation carries no meaning.
pub type Edge = (usize, usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Directed,
    Undirected,
}

impl Direction {
    /// Shortest cycle allowed in a cycle cover.
    pub fn min_cycle_len(self) -> usize {
        match self {
            Direction::Directed => 2,
            Direction::Undirected => 3,
        }
    }

    /// Smallest vertex count admitting a cycle cover.
    pub fn min_vertices(self) -> usize {
        self.min_cycle_len()
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Directed => "directed",
            Direction::Undirected => "undirected",
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "directed" => Ok(Direction::Directed),
            "undirected" => Ok(Direction::Undirected),
            other => Err(Error::Usage(format!(
                "unknown direction `{other}` (expected `directed` or `undirected`)"
            ))),
        }
    }
}

/// Anything that can assign a weight vector to an edge.
pub trait EdgeWeights {
    fn criteria(&self) -> usize;

    /// Adds the weight of edge `tail -> head` (or `{tail, head}`) to `acc`.
    fn add_edge_weight(&self, tail: usize, head: usize, acc: &mut WeightVector);

    fn edge_weight(&self, tail: usize, head: usize) -> WeightVector {
        let mut w = WeightVector::zeros(self.criteria());
        self.add_edge_weight(tail, head, &mut w);
        w
    }

    /// Total weight of a set of edges.
    fn weight_of<'a, I>(&self, edges: I) -> WeightVector
    where
        I: IntoIterator<Item = &'a Edge>,
        Self: Sized,
    {
        let mut w = WeightVector::zeros(self.criteria());
        for &(t, h) in edges {
            self.add_edge_weight(t, h, &mut w);
        }
        w
    }
}

/// A complete directed or undirected graph on `n` vertices with `k` weight
/// matrices. Diagonal entries are always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Instance {
    direction: Direction,
    n: usize,
    k: usize,
    // one row-major n*n matrix per criterion
    weights: Vec<Vec<u64>>,
}

impl Instance {
    /// Builds an instance from `k` square matrices. Diagonal entries are
    /// ignored (stored as zero).
    pub fn new(direction: Direction, matrices: Vec<Vec<Vec<u64>>>) -> Result<Self> {
        let k = matrices.len();
        if k == 0 {
            return Err(Error::structure("an instance needs at least one criterion"));
        }
        let n = matrices[0].len();
        if n < direction.min_vertices() {
            return Err(Error::structure(format!(
                "{direction} instances need at least {} vertices, got {n}",
                direction.min_vertices()
            )));
        }
        let mut weights = Vec::with_capacity(k);
        for (c, m) in matrices.iter().enumerate() {
            if m.len() != n || m.iter().any(|row| row.len() != n) {
                return Err(Error::structure(format!(
                    "weight matrix {} is not {n}x{n}",
                    c + 1
                )));
            }
            let mut flat = vec![0u64; n * n];
            for (i, row) in m.iter().enumerate() {
                for (j, &w) in row.iter().enumerate() {
                    if i != j {
                        flat[i * n + j] = w;
                    }
                }
            }
            if direction == Direction::Undirected {
                for i in 0..n {
                    for j in i + 1..n {
                        if flat[i * n + j] != flat[j * n + i] {
                            return Err(Error::structure(format!(
                                "undirected weight matrix {} is not symmetric at ({i},{j})",
                                c + 1
                            )));
                        }
                    }
                }
            }
            weights.push(flat);
        }
        Ok(Instance {
            direction,
            n,
            k,
            weights,
        })
    }

    /// Builds an instance from a weight function evaluated on every ordered
    /// pair. For undirected instances only pairs `i < j` are queried.
    pub fn from_fn(
        direction: Direction,
        n: usize,
        k: usize,
        mut f: impl FnMut(usize, usize, usize) -> u64,
    ) -> Result<Self> {
        let mut matrices = vec![vec![vec![0u64; n]; n]; k];
        for (c, m) in matrices.iter_mut().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    match direction {
                        Direction::Directed => m[i][j] = f(c, i, j),
                        Direction::Undirected if i < j => {
                            let w = f(c, i, j);
                            m[i][j] = w;
                            m[j][i] = w;
                        }
                        Direction::Undirected => {}
                    }
                }
            }
        }
        Instance::new(direction, matrices)
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Weight of edge `i -> j` under criterion `c`.
    #[inline]
    pub fn weight(&self, c: usize, i: usize, j: usize) -> u64 {
        self.weights[c][i * self.n + j]
    }

    /// The matrix of criterion `c` as rows.
    pub fn matrix(&self, c: usize) -> Vec<Vec<u64>> {
        self.weights[c].chunks(self.n).map(|r| r.to_vec()).collect()
    }

    /// Copy of the instance with criterion `index` removed.
    pub fn drop_criterion(&self, index: usize) -> Result<Instance> {
        if index >= self.k || self.k == 1 {
            return Err(Error::structure(format!(
                "cannot drop criterion {index} of a {}-criteria instance",
                self.k
            )));
        }
        let mut weights = self.weights.clone();
        weights.remove(index);
        Ok(Instance {
            direction: self.direction,
            n: self.n,
            k: self.k - 1,
            weights,
        })
    }

    /// Copy of the instance with every edge incident to a vertex in `zeroed`
    /// set to weight zero in all criteria.
    pub fn zero_incident(&self, zeroed: &[bool]) -> Instance {
        let mut out = self.clone();
        let n = self.n;
        for m in out.weights.iter_mut() {
            for i in 0..n {
                for j in 0..n {
                    if zeroed[i] || zeroed[j] {
                        m[i * n + j] = 0;
                    }
                }
            }
        }
        out
    }

    /// Sum of the weights of the closed walk visiting `order` cyclically.
    pub fn cycle_weight(&self, order: &[usize]) -> WeightVector {
        let mut w = WeightVector::zeros(self.k);
        if order.len() < 2 {
            return w;
        }
        for idx in 0..order.len() {
            let a = order[idx];
            let b = order[(idx + 1) % order.len()];
            self.add_edge_weight(a, b, &mut w);
        }
        w
    }
}

impl EdgeWeights for Instance {
    fn criteria(&self) -> usize {
        self.k
    }

    #[inline]
    fn add_edge_weight(&self, tail: usize, head: usize, acc: &mut WeightVector) {
        let idx = tail * self.n + head;
        for (a, m) in acc.components_mut().iter_mut().zip(&self.weights) {
            *a += m[idx];
        }
    }
}

impl fmt::Debug for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Instance")
            .field("direction", &self.direction)
            .field("n", &self.n)
            .field("k", &self.k)
            .finish_non_exhaustive()
    }
}

/// Sparse edge weights for covers that are not embedded in a full instance.
/// Missing edges weigh zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EdgeWeightMap {
    k: usize,
    undirected: bool,
    map: HashMap<Edge, WeightVector>,
}

impl EdgeWeightMap {
    pub fn new(direction: Direction, k: usize) -> Self {
        EdgeWeightMap {
            k,
            undirected: direction == Direction::Undirected,
            map: HashMap::new(),
        }
    }

    fn key(&self, a: usize, b: usize) -> Edge {
        if self.undirected && b < a {
            (b, a)
        } else {
            (a, b)
        }
    }

    pub fn set(&mut self, tail: usize, head: usize, w: WeightVector) -> Result<()> {
        if w.len() != self.k {
            return Err(Error::dimension(self.k, w.len()));
        }
        let key = self.key(tail, head);
        self.map.insert(key, w);
        Ok(())
    }
}

impl EdgeWeights for EdgeWeightMap {
    fn criteria(&self) -> usize {
        self.k
    }

    fn add_edge_weight(&self, tail: usize, head: usize, acc: &mut WeightVector) {
        if let Some(w) = self.map.get(&self.key(tail, head)) {
            *acc += w;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_and_asymmetric() {
        let m = vec![vec![vec![0, 1], vec![1, 0]]];
        assert!(Instance::new(Direction::Directed, m.clone()).is_ok());
        assert!(matches!(
            Instance::new(Direction::Undirected, m),
            Err(Error::Structure(_))
        ));
        let asym = vec![vec![vec![0, 1, 2], vec![1, 0, 3], vec![2, 4, 0]]];
        assert!(Instance::new(Direction::Undirected, asym).is_err());
    }

    #[test]
    fn diagonal_is_ignored() {
        let inst = Instance::new(Direction::Directed, vec![vec![vec![9, 1], vec![2, 9]]]).unwrap();
        assert_eq!(inst.weight(0, 0, 0), 0);
        assert_eq!(inst.cycle_weight(&[0, 1]), WeightVector::from([3]));
    }

    #[test]
    fn drop_and_zero() {
        let inst = Instance::from_fn(Direction::Undirected, 4, 2, |c, i, j| (c + i + j) as u64).unwrap();
        let d = inst.drop_criterion(0).unwrap();
        assert_eq!(d.k(), 1);
        assert_eq!(d.weight(0, 1, 2), 4);
        let z = inst.zero_incident(&[false, true, false, false]);
        assert_eq!(z.weight(0, 1, 2), 0);
        assert_eq!(z.weight(1, 2, 3), 6);
    }
}
