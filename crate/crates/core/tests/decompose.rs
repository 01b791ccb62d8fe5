mod common;

use mctsp::decompose::{
    combine_light_units, decompose_k3_undirected, decompose_k3_undirected_traced, lightweight, normalize,
    rand_lightweight, rand_lightweight_with_stats, DecompositionConfig,
};
use mctsp::{ratio, CycleCover, Direction, EdgeWeightMap, EdgeWeights, Error, WeightVector};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn wv(v: &[u64]) -> WeightVector {
    WeightVector::new(v.to_vec())
}

/// Cover made of the given cycles (consecutive vertices) with edge weights
/// listed per cycle in edge order.
fn build(direction: Direction, k: usize, cycles: &[&[&[u64]]]) -> (CycleCover, EdgeWeightMap) {
    let mut vertex_cycles = Vec::new();
    let mut weights = EdgeWeightMap::new(direction, k);
    let mut next = 0;
    for c in cycles {
        let vs: Vec<usize> = (next..next + c.len()).collect();
        for (p, w) in c.iter().enumerate() {
            weights.set(vs[p], vs[(p + 1) % vs.len()], wv(w)).unwrap();
        }
        next += c.len();
        vertex_cycles.push(vs);
    }
    (CycleCover::new(direction, next, vertex_cycles).unwrap(), weights)
}

/// Best min-fraction over all ways of keeping one edge per 2-cycle, as an
/// exact fraction.
fn brute_best_directed(cover: &CycleCover, w: &EdgeWeightMap) -> mctsp::Rational {
    let total = cover.weight(w);
    let cycles = cover.cycles().len();
    (0..1usize << cycles)
        .map(|mask| {
            let mut kept = WeightVector::zeros(w.criteria());
            for c in 0..cycles {
                let (a, b) = cover.cycle_edges(c)[mask >> c & 1];
                kept += &w.edge_weight(a, b);
            }
            kept.iter()
                .zip(total.iter())
                .filter(|(_, &t)| t > 0)
                .map(|(&x, &t)| ratio(x as i64, t as i64))
                .min()
                .unwrap()
        })
        .max()
        .unwrap()
}

#[test]
fn three_directed_two_cycles() {
    let (cover, w) = build(
        Direction::Directed,
        2,
        &[&[&[1, 0], &[0, 1]], &[&[1, 0], &[0, 1]], &[&[1, 1], &[0, 0]]],
    );
    let cfg = DecompositionConfig::new(ratio(1, 3), 2);
    let p = lightweight(&cover, &w, &cfg).unwrap();
    assert!(p.weight(&w).covers(&wv(&[3, 3]), ratio(1, 3)).unwrap());
    // the search finds the best of the 2^3 decompositions
    let best = brute_best_directed(&cover, &w);
    assert!(best >= ratio(1, 3));
    let got = p.weight(&w);
    let got_min = got.iter().map(|&x| ratio(x as i64, 3)).min().unwrap();
    assert_eq!(got_min, best);
}

#[test]
fn symmetric_triangle() {
    let (cover, w) = build(Direction::Undirected, 2, &[&[&[1, 1], &[1, 1], &[1, 1]]]);
    let p = lightweight(&cover, &w, &DecompositionConfig::new(ratio(1, 2), 2)).unwrap();
    assert_eq!(p.weight(&w), wv(&[2, 2]));
}

#[test]
fn heavy_edge_is_a_contract_error() {
    let (cover, w) = build(Direction::Directed, 2, &[&[&[1, 0], &[0, 1]]]);
    let e = lightweight(&cover, &w, &DecompositionConfig::new(ratio(1, 3), 2)).unwrap_err();
    assert!(matches!(e, Error::Contract(_)), "{e}");
    assert!(matches!(
        rand_lightweight(&cover, &w, &DecompositionConfig::new(ratio(1, 3), 2)),
        Err(Error::Contract(_))
    ));
}

#[test]
fn zero_criterion_is_ignored() {
    let (cover, w) = build(
        Direction::Directed,
        2,
        &[&[&[1, 0], &[1, 0]], &[&[1, 0], &[1, 0]], &[&[1, 0], &[1, 0]]],
    );
    let p = lightweight(&cover, &w, &DecompositionConfig::new(ratio(1, 3), 2)).unwrap();
    assert_eq!(p.weight(&w), wv(&[3, 0]));
}

#[test]
fn randomized_matches_deterministic_below_six() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for t in 0..200 {
        let k = 2 + t % 4;
        let rc = common::random_cover(&mut rng, Direction::Undirected, k, 1 + t % 7, 3, 3, Some((1, k as u64)));
        let cfg = DecompositionConfig::new(ratio(1, k as i64), k).seed(t as u64);
        assert_eq!(
            rand_lightweight(&rc.cover, &rc.weights, &cfg).unwrap(),
            lightweight(&rc.cover, &rc.weights, &cfg).unwrap()
        );
    }
}

#[test]
fn randomized_is_reproducible_and_falls_back() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let rc = common::random_cover(&mut rng, Direction::Directed, 6, 30, 2, 2, Some((1, 7)));
    let cfg = DecompositionConfig::new(ratio(1, 7), 6).seed(99);
    let a = rand_lightweight_with_stats(&rc.cover, &rc.weights, &cfg).unwrap();
    let b = rand_lightweight_with_stats(&rc.cover, &rc.weights, &cfg).unwrap();
    assert_eq!(a, b);
    // with no random attempts the deterministic search answers
    let cfg0 = DecompositionConfig { max_random_attempts: 0, ..cfg };
    let (p, stats) = rand_lightweight_with_stats(&rc.cover, &rc.weights, &cfg0).unwrap();
    assert!(stats.deterministic);
    assert_eq!(stats.attempts, 0);
    assert_eq!(p, lightweight(&rc.cover, &rc.weights, &cfg0).unwrap());
}

#[test]
fn k3_keeps_a_third_on_random_light_covers() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for t in 0..1000 {
        let rc = common::random_cover(&mut rng, Direction::Undirected, 3, 10, 3, 0, Some((1, 3)));
        let p = decompose_k3_undirected(&rc.cover, &rc.weights).unwrap();
        let total = common::table_weight(&rc.table, &rc.cover.edges(), true, 3);
        let kept = common::table_weight(&rc.table, p.edges(), true, 3);
        assert!(common::scaled_ge(&kept, 1, 3, &total), "seed {t}: {kept:?} vs {total:?}");
    }
}

#[test]
fn k3_anchor_captures_concentrated_third_criterion() {
    // each triangle: one (0,0,1) edge and two (1,1,0) edges
    let tri: &[&[u64]] = &[&[0, 0, 1], &[1, 1, 0], &[1, 1, 0]];
    let (cover, w) = build(Direction::Undirected, 3, &[tri, tri, tri, tri]);
    let (p, trace) = decompose_k3_undirected_traced(&cover, &w).unwrap();
    let total = cover.weight(&w);
    assert_eq!(total, wv(&[8, 8, 4]));
    assert_eq!(trace.anchor.components()[2], 4);
    assert!(p.weight(&w).covers(&total, ratio(1, 3)).unwrap());
}

#[test]
fn combining_preserves_totals() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for t in 0..300 {
        let direction = if t % 2 == 0 { Direction::Directed } else { Direction::Undirected };
        let rc = common::random_cover(&mut rng, direction, 3, 1 + t % 9, direction.min_cycle_len(), 4, None);
        let mut nc = normalize(&rc.cover, &rc.weights);
        let total = rc.cover.weight(&rc.weights);
        let sum = |units: &[mctsp::decompose::Unit]| {
            let mut s = WeightVector::zeros(3);
            for u in units {
                s += &u.weight();
            }
            s
        };
        assert_eq!(sum(nc.units()), total);
        let alpha = ratio(1, 4);
        nc.rescale(alpha);
        let merged = combine_light_units(nc, alpha);
        assert_eq!(sum(merged.units()), total);
        // at most one light unit survives
        assert!(merged.units().iter().filter(|u| merged.is_light(u, alpha)).count() <= 1);
    }
}

proptest! {
    #[test]
    fn normalized_choices_translate_with_equal_weight(
        seed in 0u64..10_000,
        cycles in 1usize..6,
        directed in any::<bool>(),
        picks in proptest::collection::vec(0usize..3, 20),
    ) {
        let direction = if directed { Direction::Directed } else { Direction::Undirected };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rc = common::random_cover(&mut rng, direction, 2, cycles, direction.min_cycle_len(), 4, None);
        let nc = normalize(&rc.cover, &rc.weights);
        let size = direction.min_cycle_len();
        let dropped: Vec<usize> = (0..nc.units().len()).map(|u| picks[u % picks.len()] % size).collect();
        let p = nc.translate(&rc.cover, &dropped).unwrap();
        let mut want = WeightVector::zeros(2);
        for (u, &d) in nc.units().iter().zip(&dropped) {
            want += &u.kept_weight(d);
        }
        prop_assert_eq!(p.weight(&rc.weights), want);
    }

    #[test]
    fn lightweight_meets_its_bound(seed in 0u64..100_000, k in 2usize..5, cycles in 1usize..8, directed in any::<bool>()) {
        let direction = if directed { Direction::Directed } else { Direction::Undirected };
        let den = if directed { k as u64 + 1 } else { k as u64 };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rc = common::random_cover(&mut rng, direction, k, cycles, direction.min_cycle_len(), 3, Some((1, den)));
        let p = lightweight(&rc.cover, &rc.weights, &DecompositionConfig::new(ratio(1, den as i64), k)).unwrap();
        let total = common::table_weight(&rc.table, &rc.cover.edges(), !directed, k);
        let kept = common::table_weight(&rc.table, p.edges(), !directed, k);
        prop_assert!(common::scaled_ge(&kept, 1, den, &total));
    }
}
