use std::collections::{BTreeSet, HashMap};

use crate::cover::HamiltonianCycle;
use crate::error::{Error, Result};
use crate::instance::{Direction, Edge, Instance};

/// Four anchor arcs `(a,u)`, `(u,b)`, `(c,v)`, `(v,d)` around an arc
/// `e = (u,v)`. Anchors may coincide with each other or with `u` and `v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PabcdPattern {
    pub u: usize,
    pub v: usize,
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
}

impl PabcdPattern {
    pub fn new(e: Edge, a: usize, b: usize, c: usize, d: usize) -> Self {
        PabcdPattern { u: e.0, v: e.1, a, b, c, d }
    }

    /// The deduplicated arc set, in the order `(a,u), (u,b), (c,v), (v,d)`.
    pub fn arcs(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(4);
        for arc in [(self.a, self.u), (self.u, self.b), (self.c, self.v), (self.v, self.d)] {
            if !out.contains(&arc) {
                out.push(arc);
            }
        }
        out
    }

    pub fn vertices(&self) -> BTreeSet<usize> {
        [self.u, self.v, self.a, self.b, self.c, self.d].into_iter().collect()
    }

    /// The vertex sequences of the pattern paths, the one through `u` first,
    /// or `None` if the arcs do not form one or two disjoint simple paths.
    pub fn paths(&self) -> Option<Vec<Vec<usize>>> {
        if self.u == self.v {
            return None;
        }
        let arcs = self.arcs();
        let mut succ = HashMap::new();
        let mut pred = HashMap::new();
        for &(t, h) in &arcs {
            if t == h || succ.insert(t, h).is_some() || pred.insert(h, t).is_some() {
                return None;
            }
        }
        let verts = self.vertices();
        let mut paths: Vec<Vec<usize>> = Vec::new();
        for &s in verts.iter().filter(|x| !pred.contains_key(x)) {
            let mut p = vec![s];
            while let Some(&h) = succ.get(p.last().expect("nonempty")) {
                p.push(h);
            }
            paths.push(p);
        }
        // vertices left unvisited lie on a cycle
        if paths.iter().map(Vec::len).sum::<usize>() != verts.len() {
            return None;
        }
        paths.sort_by_key(|p| !p.contains(&self.u));
        (1..=2).contains(&paths.len()).then_some(paths)
    }

    /// If the arcs form one cycle through all `n` vertices, that cycle.
    pub fn as_tour(&self, n: usize) -> Option<HamiltonianCycle> {
        let arcs = self.arcs();
        if arcs.len() != n || self.vertices().len() != n {
            return None;
        }
        let succ: HashMap<usize, usize> = arcs.iter().copied().collect();
        if succ.len() != n {
            return None;
        }
        let mut order = vec![self.u];
        while order.len() < n {
            let next = succ[order.last().expect("nonempty")];
            if next == self.u {
                return None;
            }
            order.push(next);
        }
        if succ[order.last().expect("nonempty")] != self.u {
            return None;
        }
        HamiltonianCycle::new(Direction::Directed, order).ok()
    }
}

/// Whether the pattern arcs form one or two vertex-disjoint simple paths.
pub fn is_legal_pabcd(p: &PabcdPattern) -> bool {
    p.paths().is_some()
}

/// A vertex of a contracted instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ContractedNode {
    /// An original vertex outside the pattern.
    Vertex(usize),
    /// A pattern path shrunk to one vertex; index into [`ContractionMap::paths`].
    Path(usize),
}

/// How a contracted tour is turned back into a tour of the original graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExpansionMode {
    /// Splice the pattern paths back in.
    WithPattern,
    /// Keep only the endpoints of each merged vertex and route the arc
    /// `(u,v)` through the one entered at the start of `u`'s path.
    WithEdgeUv,
    /// Two-path patterns only: replace the merged vertices by `a,u,v,d` and
    /// `c,b`. This keeps `(u,v)` but not the contracted tour's arcs.
    WithEdgeUvCrossed,
}

/// Correspondence between a contracted instance and the original one.
///
/// Contracted vertices are the original vertices outside the pattern in
/// ascending order, followed by one vertex per pattern path. A merged vertex
/// is entered through its path's first vertex and left through its last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionMap {
    n: usize,
    pattern: PabcdPattern,
    paths: Vec<Vec<usize>>,
    nodes: Vec<ContractedNode>,
}

impl ContractionMap {
    pub fn build(n: usize, p: &PabcdPattern) -> Result<Self> {
        let verts = p.vertices();
        if let Some(&x) = verts.iter().find(|&&x| x >= n) {
            return Err(Error::contract(format!("pattern vertex {x} out of range for n={n}")));
        }
        let paths = p
            .paths()
            .ok_or_else(|| Error::contract(format!("illegal pattern {p:?}")))?;
        let mut nodes: Vec<ContractedNode> = (0..n)
            .filter(|x| !verts.contains(x))
            .map(ContractedNode::Vertex)
            .collect();
        nodes.extend((0..paths.len()).map(ContractedNode::Path));
        Ok(ContractionMap { n, pattern: *p, paths, nodes })
    }

    pub fn original_n(&self) -> usize {
        self.n
    }

    /// Number of contracted vertices.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn pattern(&self) -> &PabcdPattern {
        &self.pattern
    }

    pub fn paths(&self) -> &[Vec<usize>] {
        &self.paths
    }

    pub fn nodes(&self) -> &[ContractedNode] {
        &self.nodes
    }

    pub fn is_single_path(&self) -> bool {
        self.paths.len() == 1
    }

    /// Original vertex whose incoming arcs the contracted vertex inherits.
    pub fn entry(&self, node: usize) -> usize {
        match self.nodes[node] {
            ContractedNode::Vertex(x) => x,
            ContractedNode::Path(p) => self.paths[p][0],
        }
    }

    /// Original vertex whose outgoing arcs the contracted vertex inherits.
    pub fn exit(&self, node: usize) -> usize {
        match self.nodes[node] {
            ContractedNode::Vertex(x) => x,
            ContractedNode::Path(p) => *self.paths[p].last().expect("nonempty path"),
        }
    }

    fn segment(&self, path: usize, mode: ExpansionMode) -> Result<Vec<usize>> {
        let (u, v) = (self.pattern.u, self.pattern.v);
        let p = &self.paths[path];
        let (first, last) = (p[0], p[p.len() - 1]);
        let inner = || p[1..p.len() - 1].iter().copied().filter(|&x| x != u && x != v);
        Ok(match mode {
            ExpansionMode::WithPattern => p.clone(),
            ExpansionMode::WithEdgeUv if path == 0 => {
                let mut s = vec![first, u, v];
                s.extend(inner());
                s.push(last);
                s
            }
            ExpansionMode::WithEdgeUv => {
                let mut s = vec![first];
                s.extend(inner());
                s.push(last);
                s
            }
            ExpansionMode::WithEdgeUvCrossed => {
                if self.is_single_path() {
                    return Err(Error::contract("crossed expansion needs a two-path pattern"));
                }
                let other = &self.paths[1 - path];
                if path == 0 {
                    vec![first, u, v, other[other.len() - 1]]
                } else {
                    vec![first, self.paths[0][2]]
                }
            }
        })
    }
}

/// Contracts a legal pattern: every pattern path becomes one vertex, entered
/// like its first vertex and left like its last.
pub fn contract_pabcd(inst: &Instance, p: &PabcdPattern) -> Result<(Instance, ContractionMap)> {
    if inst.direction() != Direction::Directed {
        return Err(Error::contract("pattern contraction needs a directed instance"));
    }
    let map = ContractionMap::build(inst.n(), p)?;
    if map.len() < Direction::Directed.min_vertices() {
        return Err(Error::structure(format!(
            "contraction leaves {} vertex, below the directed minimum",
            map.len()
        )));
    }
    let contracted = Instance::from_fn(Direction::Directed, map.len(), inst.k(), |c, i, j| {
        inst.weight(c, map.exit(i), map.entry(j))
    })?;
    Ok((contracted, map))
}

/// Expands a tour of the contracted instance, given as its vertex order.
/// The order `[0]` stands for the one-vertex contraction.
pub fn expand_order(order: &[usize], map: &ContractionMap, mode: ExpansionMode) -> Result<HamiltonianCycle> {
    let mut seen = vec![false; map.len()];
    if order.len() != map.len() {
        return Err(Error::contract(format!(
            "tour has {} vertices, the contraction {}",
            order.len(),
            map.len()
        )));
    }
    let mut out = Vec::with_capacity(map.original_n());
    for &x in order {
        if x >= map.len() || std::mem::replace(&mut seen[x], true) {
            return Err(Error::contract("contracted order is not a permutation"));
        }
        match map.nodes[x] {
            ContractedNode::Vertex(y) => out.push(y),
            ContractedNode::Path(p) => out.extend(map.segment(p, mode)?),
        }
    }
    HamiltonianCycle::new(Direction::Directed, out)
}

/// [`expand_order`] for a tour of the contracted instance.
pub fn expand_tour(h: &HamiltonianCycle, map: &ContractionMap, mode: ExpansionMode) -> Result<HamiltonianCycle> {
    if h.direction() != Direction::Directed {
        return Err(Error::contract("expansion needs a directed tour"));
    }
    expand_order(h.order(), map, mode)
}
