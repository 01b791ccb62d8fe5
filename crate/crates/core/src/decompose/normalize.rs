use std::collections::HashSet;

use crate::cover::{CycleCover, PathCollection};
use crate::error::{Error, Result};
use crate::instance::{Direction, EdgeWeights};
use crate::weight::{le_scaled, Rational, WeightVector};

/// A slot of the original cover: `(cycle index, edge position)`.
pub type EdgeSlot = (usize, usize);

/// An edge of a normalized cover. Padding edges have no origins and zero
/// weight; merged edges carry the origins of everything merged into them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyntheticEdge {
    pub weight: WeightVector,
    pub origins: Vec<EdgeSlot>,
}

impl SyntheticEdge {
    pub fn is_padding(&self) -> bool {
        self.origins.is_empty()
    }
}

/// An abstract cycle of length 2 (directed) or 3 (undirected).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unit {
    pub edges: Vec<SyntheticEdge>,
}

impl Unit {
    pub fn weight(&self) -> WeightVector {
        let mut w = WeightVector::zeros(self.edges[0].weight.len());
        for e in &self.edges {
            w += &e.weight;
        }
        w
    }

    /// Weight kept when the edge at `dropped` is removed.
    pub fn kept_weight(&self, dropped: usize) -> WeightVector {
        let mut w = WeightVector::zeros(self.edges[0].weight.len());
        for (p, e) in self.edges.iter().enumerate() {
            if p != dropped {
                w += &e.weight;
            }
        }
        w
    }
}

/// A cover rewritten into 2-edge (directed) or 3-edge (undirected) units
/// with the same total weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedCover {
    direction: Direction,
    units: Vec<Unit>,
    totals: WeightVector,
    scale: Vec<Option<Rational>>,
}

impl NormalizedCover {
    /// Assembles a normalized cover directly from units. `totals` is the
    /// weight of the cover the units stand for.
    pub fn from_units(direction: Direction, units: Vec<Unit>, totals: WeightVector) -> Result<Self> {
        let width = unit_len(direction);
        for u in &units {
            if u.edges.len() != width {
                return Err(Error::structure(format!(
                    "{direction} units need exactly {width} edges"
                )));
            }
            if u.edges.iter().any(|e| e.weight.len() != totals.len()) {
                return Err(Error::dimension(totals.len(), u.edges[0].weight.len()));
            }
        }
        let k = totals.len();
        Ok(NormalizedCover {
            direction,
            units,
            totals,
            scale: vec![None; k],
        })
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn units(&self) -> &[Unit] {
        &self.units
    }

    /// Unscaled weight `w(C)` of the original cover.
    pub fn totals(&self) -> &WeightVector {
        &self.totals
    }

    /// Per-criterion factors `1 / (alpha * w_i(C))`; `None` for criteria
    /// whose total is zero (those are ignored by the decomposition search).
    pub fn scale(&self) -> &[Option<Rational>] {
        &self.scale
    }

    /// Sets the scale so every criterion with a nonzero total sums to
    /// `1 / alpha`.
    pub fn rescale(&mut self, alpha: Rational) {
        self.scale = self
            .totals
            .iter()
            .map(|&t| {
                if t == 0 {
                    None
                } else {
                    Some(Rational::from_integer(1) / (alpha * Rational::from_integer(t as i64)))
                }
            })
            .collect();
    }

    /// Scaled weight of unit `u` under criterion `i`.
    pub fn scaled_unit_weight(&self, u: usize, i: usize) -> Option<Rational> {
        let w = self.units[u].weight()[i] as i64;
        self.scale[i].map(|s| s * Rational::from_integer(w))
    }

    /// A unit is light when its scaled weight is at most 1/2 in every
    /// criterion, i.e. `2 * w(unit) <= alpha * w(C)`.
    pub fn is_light(&self, unit: &Unit, alpha: Rational) -> bool {
        let w = unit.weight();
        w.iter()
            .zip(self.totals.iter())
            .all(|(&x, &t)| le_scaled(2 * x, alpha, t))
    }

    /// Maps one dropped position per unit back onto the original cover.
    pub fn translate(&self, cover: &CycleCover, dropped: &[usize]) -> Result<PathCollection> {
        if dropped.len() != self.units.len() {
            return Err(Error::contract("one dropped position per unit required"));
        }
        let mut removed: HashSet<EdgeSlot> = HashSet::new();
        for (unit, &d) in self.units.iter().zip(dropped) {
            removed.extend(unit.edges[d].origins.iter().copied());
        }
        PathCollection::removing(cover, &removed)
    }
}

fn unit_len(direction: Direction) -> usize {
    match direction {
        Direction::Directed => 2,
        Direction::Undirected => 3,
    }
}

/// Splits every cycle of length `l` into `floor(l / 2)` directed 2-units or
/// `floor(l / 3)` undirected 3-units; leftover edges are completed into one
/// more unit with zero-weight padding edges.
pub fn normalize(cover: &CycleCover, w: &impl EdgeWeights) -> NormalizedCover {
    let k = w.criteria();
    let width = unit_len(cover.direction());
    let mut units = Vec::new();
    let mut totals = WeightVector::zeros(k);
    for c in 0..cover.cycles().len() {
        let edges: Vec<SyntheticEdge> = cover
            .cycle_edges(c)
            .into_iter()
            .enumerate()
            .map(|(p, (a, b))| SyntheticEdge {
                weight: w.edge_weight(a, b),
                origins: vec![(c, p)],
            })
            .collect();
        for e in &edges {
            totals += &e.weight;
        }
        for chunk in edges.chunks(width) {
            let mut unit = chunk.to_vec();
            while unit.len() < width {
                unit.push(SyntheticEdge {
                    weight: WeightVector::zeros(k),
                    origins: Vec::new(),
                });
            }
            units.push(Unit { edges: unit });
        }
    }
    NormalizedCover {
        direction: cover.direction(),
        units,
        totals,
        scale: vec![None; k],
    }
}

/// Merges light units pairwise until at most one light unit remains.
/// Edge `p` of a merged unit is the positional sum of edge `p` of its parts,
/// so one drop choice on the merged unit drops one edge from each part.
pub fn combine_light_units(nc: NormalizedCover, alpha: Rational) -> NormalizedCover {
    let NormalizedCover {
        direction,
        units,
        totals,
        scale,
    } = nc;
    let probe = NormalizedCover {
        direction,
        units: Vec::new(),
        totals,
        scale,
    };
    let mut out: Vec<Unit> = Vec::with_capacity(units.len());
    let mut pending: Option<usize> = None;
    for unit in units {
        if !probe.is_light(&unit, alpha) {
            out.push(unit);
            continue;
        }
        match pending {
            None => {
                pending = Some(out.len());
                out.push(unit);
            }
            Some(idx) => {
                let target = &mut out[idx];
                for (dst, src) in target.edges.iter_mut().zip(unit.edges) {
                    dst.weight += &src.weight;
                    dst.origins.extend(src.origins);
                }
                if !probe.is_light(&out[idx], alpha) {
                    pending = None;
                }
            }
        }
    }
    NormalizedCover {
        units: out,
        ..probe
    }
}
