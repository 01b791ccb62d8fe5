//! Seeded random instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::instance::{Direction, Instance};

/// Instance with weights drawn uniformly from `0..=max_weight`; symmetric
/// when undirected. The same arguments always produce the same instance.
pub fn random_instance(
    direction: Direction,
    n: usize,
    k: usize,
    max_weight: u64,
    seed: u64,
) -> Result<Instance> {
    if n < direction.min_vertices() {
        return Err(Error::Usage(format!(
            "{direction} instances need n >= {}, got {n}",
            direction.min_vertices()
        )));
    }
    if k == 0 {
        return Err(Error::Usage("k must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Instance::from_fn(direction, n, k, |_, _, _| rng.gen_range(0..=max_weight))
}
