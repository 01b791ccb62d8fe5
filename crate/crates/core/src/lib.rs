//! Approximate Pareto curves for multi-criteria maximum traveling salesman
//! problems.
//!
//! The library computes Pareto curves of cycle covers exactly, decomposes
//! each cover into paths that keep a guaranteed fraction of every criterion,
//! and patches the paths into tours. Heavy edges are handled by fixing them
//! and recursing on one criterion fewer. The resulting tour sets are
//! `(1/(k+1) - eps)`-approximate (directed) and `(1/k - eps)`-approximate
//! (undirected) Pareto curves. Exhaustive oracles in [`oracle`] check those
//! guarantees on small instances.

pub mod cli;
pub mod cover;
pub mod cyclecover;
pub mod decompose;
pub mod error;
pub mod format;
pub mod generate;
pub mod instance;
pub mod maxtsp;
pub mod oracle;
pub mod pareto;
pub mod weight;

pub use cover::{CycleCover, HamiltonianCycle, PathCollection};
pub use error::{Error, Result};
pub use instance::{Direction, Edge, EdgeWeightMap, EdgeWeights, Instance};
pub use pareto::{alpha_covers, pareto_insert, ParetoSet};
pub use weight::{dominates, ratio, Rational, WeightVector};

// The guide's code blocks run as doctests so the book cannot drift from the
// library.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/pareto.md")]
    mod pareto {}
    #[doc = include_str!("../../../book/src/cycle-covers.md")]
    mod cycle_covers {}
    #[doc = include_str!("../../../book/src/decompositions.md")]
    mod decompositions {}
    #[doc = include_str!("../../../book/src/algorithms.md")]
    mod algorithms {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
