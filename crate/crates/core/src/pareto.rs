//! Nondominated solution sets and approximate coverage.

use crate::error::{Error, Result};
use crate::weight::{Rational, WeightVector};

/// A set of solutions together with their weight vectors.
///
/// Sets built through [`ParetoSet::insert`] are always pruned: no entry
/// dominates another, and among entries with equal vectors only the first
/// inserted survives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParetoSet<S> {
    dim: usize,
    entries: Vec<(S, WeightVector)>,
    pruned: bool,
}

impl<S> ParetoSet<S> {
    pub fn new(dim: usize) -> Self {
        ParetoSet {
            dim,
            entries: Vec::new(),
            pruned: true,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_pruned(&self) -> bool {
        self.pruned
    }

    pub fn entries(&self) -> &[(S, WeightVector)] {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = &(S, WeightVector)> {
        self.entries.iter()
    }

    pub fn into_entries(self) -> Vec<(S, WeightVector)> {
        self.entries
    }

    pub fn solutions(&self) -> impl Iterator<Item = &S> {
        self.entries.iter().map(|(s, _)| s)
    }

    pub fn vectors(&self) -> impl Iterator<Item = &WeightVector> {
        self.entries.iter().map(|(_, w)| w)
    }

    /// Weight vectors in lexicographic order.
    pub fn sorted_vectors(&self) -> Vec<WeightVector> {
        let mut v: Vec<_> = self.vectors().cloned().collect();
        v.sort();
        v
    }

    /// Inserts `sol` unless an existing entry dominates or equals `w`;
    /// evicts every entry that `w` dominates. Returns whether `sol` was kept.
    pub fn insert(&mut self, sol: S, w: WeightVector) -> Result<bool> {
        if w.len() != self.dim {
            return Err(Error::dimension(self.dim, w.len()));
        }
        if !self.pruned {
            self.prune();
        }
        if self.entries.iter().any(|(_, e)| e.ge_all(&w).unwrap_or(false)) {
            return Ok(false);
        }
        self.entries.retain(|(_, e)| !w.dominates(e).unwrap_or(false));
        self.entries.push((sol, w));
        Ok(true)
    }

    /// Appends without pruning. The set is marked unpruned until
    /// [`ParetoSet::prune`] runs.
    pub fn push_unpruned(&mut self, sol: S, w: WeightVector) -> Result<()> {
        if w.len() != self.dim {
            return Err(Error::dimension(self.dim, w.len()));
        }
        self.entries.push((sol, w));
        self.pruned = false;
        Ok(())
    }

    /// Removes dominated entries and later duplicates of equal vectors.
    pub fn prune(&mut self) {
        let entries = std::mem::take(&mut self.entries);
        self.pruned = true;
        for (s, w) in entries {
            // dimensions were checked on the way in
            let _ = self.insert(s, w);
        }
    }

    /// Inserts every entry of `other`.
    pub fn merge(&mut self, other: ParetoSet<S>) -> Result<()> {
        for (s, w) in other.entries {
            self.insert(s, w)?;
        }
        Ok(())
    }
}

impl<S> Extend<(S, WeightVector)> for ParetoSet<S> {
    /// Panics on dimension mismatch.
    fn extend<T: IntoIterator<Item = (S, WeightVector)>>(&mut self, iter: T) {
        for (s, w) in iter {
            self.insert(s, w).expect("weight vector dimension mismatch");
        }
    }
}

/// Free-function form of [`ParetoSet::insert`].
pub fn pareto_insert<S>(mut set: ParetoSet<S>, sol: S, w: WeightVector) -> Result<ParetoSet<S>> {
    set.insert(sol, w)?;
    Ok(set)
}

/// Whether every reference entry `z` has a candidate entry `y` with
/// `w(y) >= alpha * w(z)` componentwise.
pub fn alpha_covers<S, T>(
    alpha: Rational,
    candidate: &ParetoSet<S>,
    reference: &ParetoSet<T>,
) -> Result<bool> {
    if candidate.dim() != reference.dim() {
        return Err(Error::dimension(reference.dim(), candidate.dim()));
    }
    Ok(first_uncovered(alpha, candidate, reference).is_none())
}

/// Index of the first reference entry not `alpha`-covered by `candidate`.
pub fn first_uncovered<S, T>(
    alpha: Rational,
    candidate: &ParetoSet<S>,
    reference: &ParetoSet<T>,
) -> Option<usize> {
    reference.vectors().position(|z| {
        !candidate
            .vectors()
            .any(|y| y.covers(z, alpha).unwrap_or(false))
    })
}
