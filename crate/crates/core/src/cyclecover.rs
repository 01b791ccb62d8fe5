//! Maximum-weight cycle covers and exact Pareto curves of cycle covers.
//!
//! Two exact backends compute the Pareto curve: a subset dynamic program over
//! assignments (directed only) and a pruned recursive enumeration of cycle
//! covers (both directions). Because both are exact, the returned curve is a
//! `(1 - eps)`-approximate curve for every `eps >= 0`; `eps` is accepted so an
//! approximation backend can share the interface.

use pathfinding::kuhn_munkres::kuhn_munkres;
use pathfinding::matrix::Matrix;

use crate::cover::CycleCover;
use crate::error::{Error, Result};
use crate::instance::{Direction, Instance};
use crate::pareto::ParetoSet;
use crate::weight::{Rational, WeightVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverBackend {
    /// Subset DP over assignments; directed instances only.
    BitmaskDp,
    /// Recursive cycle-by-cycle enumeration.
    Enumeration,
}

impl CoverBackend {
    /// The backend used when none is requested explicitly.
    pub fn default_for(direction: Direction) -> Self {
        match direction {
            Direction::Directed => CoverBackend::BitmaskDp,
            Direction::Undirected => CoverBackend::Enumeration,
        }
    }
}

/// Size limits for the exact backends.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoverCaps {
    pub bitmask_dp_max_n: usize,
    pub enumeration_max_n: usize,
}

impl Default for CoverCaps {
    fn default() -> Self {
        CoverCaps {
            bitmask_dp_max_n: 16,
            enumeration_max_n: 10,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CoverParetoRequest<'a> {
    pub instance: &'a Instance,
    pub epsilon: Rational,
    pub backend: CoverBackend,
    pub caps: CoverCaps,
}

impl<'a> CoverParetoRequest<'a> {
    /// Request with `eps = 0`, the direction's default backend and default
    /// caps.
    pub fn new(instance: &'a Instance) -> Self {
        CoverParetoRequest {
            instance,
            epsilon: Rational::from_integer(0),
            backend: CoverBackend::default_for(instance.direction()),
            caps: CoverCaps::default(),
        }
    }

    pub fn backend(mut self, backend: CoverBackend) -> Self {
        self.backend = backend;
        self
    }

    pub fn caps(mut self, caps: CoverCaps) -> Self {
        self.caps = caps;
        self
    }

    pub fn epsilon(mut self, epsilon: Rational) -> Self {
        self.epsilon = epsilon;
        self
    }
}

/// Exact Pareto curve of cycle covers, one representative cover per
/// nondominated weight vector.
pub fn cover_pareto(req: &CoverParetoRequest<'_>) -> Result<ParetoSet<CycleCover>> {
    let inst = req.instance;
    if req.epsilon < Rational::from_integer(0) {
        return Err(Error::Usage(format!("epsilon must be >= 0, got {}", req.epsilon)));
    }
    match req.backend {
        CoverBackend::BitmaskDp => {
            if inst.direction() != Direction::Directed {
                return Err(Error::Backend(
                    "the bitmask DP backend only handles directed instances".into(),
                ));
            }
            if inst.n() > req.caps.bitmask_dp_max_n {
                return Err(Error::Capacity {
                    what: "cycle-cover bitmask DP",
                    n: inst.n(),
                    cap: req.caps.bitmask_dp_max_n,
                });
            }
            Ok(bitmask_dp(inst))
        }
        CoverBackend::Enumeration => {
            if inst.n() > req.caps.enumeration_max_n {
                return Err(Error::Capacity {
                    what: "cycle-cover enumeration",
                    n: inst.n(),
                    cap: req.caps.enumeration_max_n,
                });
            }
            let mut out = ParetoSet::new(inst.k());
            enumerate_covers(inst, |cycles, w| {
                if !out.vectors().any(|e| e.ge_all(w).unwrap_or(false)) {
                    let cover = CycleCover::new(inst.direction(), inst.n(), cycles.to_vec())
                        .expect("enumeration yields valid covers");
                    out.insert(cover, w.clone()).expect("dimension checked");
                }
            });
            Ok(out)
        }
    }
}

#[derive(Clone, Copy)]
struct DpLink {
    parent: u32,
    head: u8,
}

fn bitmask_dp(inst: &Instance) -> ParetoSet<CycleCover> {
    let n = inst.n();
    let k = inst.k();
    let full = (1usize << n) - 1;
    let mut states: Vec<ParetoSet<DpLink>> = (0..=full).map(|_| ParetoSet::new(k)).collect();
    states[0]
        .insert(
            DpLink {
                parent: u32::MAX,
                head: u8::MAX,
            },
            WeightVector::zeros(k),
        )
        .expect("dimension");

    // masks of equal popcount form one layer; left vertex = popcount
    let mut layers: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for mask in 0..=full {
        layers[mask.count_ones() as usize].push(mask);
    }
    for (left, layer) in layers.iter().enumerate().take(n) {
        for &mask in layer {
            if states[mask].is_empty() {
                continue;
            }
            let current: Vec<WeightVector> = states[mask].vectors().cloned().collect();
            for head in 0..n {
                if head == left || mask & (1 << head) != 0 {
                    continue;
                }
                let next = mask | (1 << head);
                for (idx, w) in current.iter().enumerate() {
                    let mut nw = w.clone();
                    for c in 0..k {
                        nw.components_mut()[c] += inst.weight(c, left, head);
                    }
                    states[next]
                        .insert(
                            DpLink {
                                parent: idx as u32,
                                head: head as u8,
                            },
                            nw,
                        )
                        .expect("dimension");
                }
            }
        }
    }

    let mut out = ParetoSet::new(k);
    for (link, w) in states[full].iter() {
        let mut succ = vec![0usize; n];
        let mut mask = full;
        let mut link = *link;
        for left in (0..n).rev() {
            succ[left] = link.head as usize;
            let prev = mask ^ (1 << link.head);
            link = states[prev].entries()[link.parent as usize].0;
            mask = prev;
        }
        let cover = CycleCover::from_successors(Direction::Directed, &succ)
            .expect("fixed-point-free assignment decodes to a cycle cover");
        out.insert(cover, w.clone()).expect("dimension");
    }
    out
}

/// Calls `visit` once for every cycle cover of `inst` with its cycles and
/// weight. Each cycle starts at its smallest vertex; undirected cycles are
/// visited in one orientation only.
pub(crate) fn enumerate_covers(inst: &Instance, mut visit: impl FnMut(&[Vec<usize>], &WeightVector)) {
    let n = inst.n();
    let mut st = EnumState {
        inst,
        covered: vec![false; n],
        cycles: Vec::new(),
        weight: WeightVector::zeros(inst.k()),
    };
    st.next_cycle(&mut visit);
}

struct EnumState<'a> {
    inst: &'a Instance,
    covered: Vec<bool>,
    cycles: Vec<Vec<usize>>,
    weight: WeightVector,
}

impl EnumState<'_> {
    fn add(&mut self, a: usize, b: usize) {
        for c in 0..self.inst.k() {
            self.weight.components_mut()[c] += self.inst.weight(c, a, b);
        }
    }

    fn sub(&mut self, a: usize, b: usize) {
        for c in 0..self.inst.k() {
            self.weight.components_mut()[c] -= self.inst.weight(c, a, b);
        }
    }

    fn next_cycle(&mut self, visit: &mut impl FnMut(&[Vec<usize>], &WeightVector)) {
        let Some(s) = self.covered.iter().position(|c| !c) else {
            visit(&self.cycles, &self.weight);
            return;
        };
        self.covered[s] = true;
        self.cycles.push(vec![s]);
        self.extend(visit);
        self.cycles.pop();
        self.covered[s] = false;
    }

    fn extend(&mut self, visit: &mut impl FnMut(&[Vec<usize>], &WeightVector)) {
        let dir = self.inst.direction();
        let (start, end, len, second) = {
            let c = self.cycles.last().expect("open cycle");
            (c[0], *c.last().expect("nonempty"), c.len(), c.get(1).copied())
        };
        if len >= dir.min_cycle_len()
            && (dir == Direction::Directed || second.is_some_and(|s| s < end))
        {
            self.add(end, start);
            self.next_cycle(visit);
            self.sub(end, start);
        }
        for x in start + 1..self.covered.len() {
            if self.covered[x] {
                continue;
            }
            self.covered[x] = true;
            self.cycles.last_mut().expect("open cycle").push(x);
            self.add(end, x);
            self.extend(visit);
            self.sub(end, x);
            self.cycles.last_mut().expect("open cycle").pop();
            self.covered[x] = false;
        }
    }
}

/// Maximum-weight cycle cover under a single criterion, with its weight.
///
/// Directed instances are solved as an assignment problem with the diagonal
/// forbidden. Undirected instances use exhaustive 2-factor search with
/// branch-and-bound, which is only meant for small `n`.
pub fn max_cover_scalar(inst: &Instance, criterion: usize) -> Result<(CycleCover, u64)> {
    let n = inst.n();
    if criterion >= inst.k() {
        return Err(Error::dimension(inst.k(), criterion + 1));
    }
    if n < inst.direction().min_vertices() {
        return Err(Error::structure("instance too small for a cycle cover"));
    }
    match inst.direction() {
        Direction::Directed => {
            let total: i64 = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .map(|(i, j)| inst.weight(criterion, i, j) as i64)
                .sum();
            // any assignment using the diagonal scores below every derangement
            let forbidden = -(total + 1);
            let rows: Vec<Vec<i64>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            if i == j {
                                forbidden
                            } else {
                                inst.weight(criterion, i, j) as i64
                            }
                        })
                        .collect()
                })
                .collect();
            let m = Matrix::from_rows(rows).expect("square matrix");
            let (value, succ) = kuhn_munkres(&m);
            debug_assert!(value >= 0);
            let cover = CycleCover::from_successors(Direction::Directed, &succ)?;
            Ok((cover, value as u64))
        }
        Direction::Undirected => Ok(best_two_factor(inst, criterion)),
    }
}

fn best_two_factor(inst: &Instance, criterion: usize) -> (CycleCover, u64) {
    let n = inst.n();
    let w = |a: usize, b: usize| inst.weight(criterion, a, b);
    let mut top1 = vec![0u64; n];
    let mut top2 = vec![0u64; n];
    for v in 0..n {
        let mut ws: Vec<u64> = (0..n).filter(|&u| u != v).map(|u| w(v, u)).collect();
        ws.sort_unstable_by(|a, b| b.cmp(a));
        top1[v] = ws[0];
        top2[v] = ws[0] + ws.get(1).copied().unwrap_or(0);
    }
    struct Bb<'a> {
        w: &'a dyn Fn(usize, usize) -> u64,
        top1: Vec<u64>,
        top2: Vec<u64>,
        covered: Vec<bool>,
        cycles: Vec<Vec<usize>>,
        cur: u64,
        best: Option<(u64, Vec<Vec<usize>>)>,
    }
    impl Bb<'_> {
        // twice an upper bound on the weight still to be added
        fn slack2(&self) -> u64 {
            let mut s: u64 = (0..self.covered.len())
                .filter(|&v| !self.covered[v])
                .map(|v| self.top2[v])
                .sum();
            if let Some(c) = self.cycles.last() {
                if c.len() == 1 {
                    s += self.top2[c[0]];
                } else {
                    s += self.top1[c[0]] + self.top1[*c.last().unwrap()];
                }
            }
            s
        }

        fn prune(&self) -> bool {
            match &self.best {
                Some((b, _)) => 2 * self.cur + self.slack2() <= 2 * b,
                None => false,
            }
        }

        fn next_cycle(&mut self) {
            let Some(s) = self.covered.iter().position(|c| !c) else {
                if self.best.as_ref().is_none_or(|(b, _)| self.cur > *b) {
                    self.best = Some((self.cur, self.cycles.clone()));
                }
                return;
            };
            self.covered[s] = true;
            self.cycles.push(vec![s]);
            self.extend();
            self.cycles.pop();
            self.covered[s] = false;
        }

        fn extend(&mut self) {
            if self.prune() {
                return;
            }
            let c = self.cycles.last().unwrap();
            let (start, end, len) = (c[0], *c.last().unwrap(), c.len());
            if len >= 3 && c[1] < end {
                let add = (self.w)(end, start);
                self.cur += add;
                self.next_cycle();
                self.cur -= add;
            }
            for x in start + 1..self.covered.len() {
                if self.covered[x] {
                    continue;
                }
                let add = (self.w)(end, x);
                self.covered[x] = true;
                self.cycles.last_mut().unwrap().push(x);
                self.cur += add;
                self.extend();
                self.cur -= add;
                self.cycles.last_mut().unwrap().pop();
                self.covered[x] = false;
            }
        }
    }
    let mut bb = Bb {
        w: &w,
        top1,
        top2,
        covered: vec![false; n],
        cycles: Vec::new(),
        cur: 0,
        best: None,
    };
    bb.next_cycle();
    let (value, cycles) = bb.best.expect("n >= 3 admits a 2-factor");
    let cover = CycleCover::new(Direction::Undirected, n, cycles).expect("valid 2-factor");
    (cover, value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::EdgeWeights;

    fn directed(rows: Vec<Vec<u64>>) -> Instance {
        Instance::new(Direction::Directed, vec![rows]).unwrap()
    }

    #[test]
    fn scalar_two_vertices() {
        let inst = directed(vec![vec![0, 5], vec![7, 0]]);
        let (c, w) = max_cover_scalar(&inst, 0).unwrap();
        assert_eq!(w, 12);
        assert_eq!(c.cycles(), &[vec![0, 1]]);
    }

    #[test]
    fn scalar_uniform_three_vertices() {
        // the only covers of n = 3 are the two directed triangles
        let inst = Instance::from_fn(Direction::Directed, 3, 1, |_, _, _| 1).unwrap();
        let mut count = 0;
        enumerate_covers(&inst, |cycles, w| {
            count += 1;
            assert_eq!(cycles.len(), 1);
            assert_eq!(w[0], 3);
        });
        assert_eq!(count, 2);
        assert_eq!(max_cover_scalar(&inst, 0).unwrap().1, 3);
    }

    #[test]
    fn scalar_undirected_k4() {
        let inst = Instance::from_fn(Direction::Undirected, 4, 1, |_, i, j| {
            if (i, j) == (0, 1) || (i, j) == (2, 3) {
                10
            } else {
                1
            }
        })
        .unwrap();
        let mut all = Vec::new();
        enumerate_covers(&inst, |_, w| all.push(w[0]));
        all.sort_unstable();
        // K4 has exactly three 2-factors (its Hamiltonian cycles)
        assert_eq!(all, vec![4, 22, 22]);
        let (c, w) = max_cover_scalar(&inst, 0).unwrap();
        assert_eq!(w, 22);
        assert_eq!(c.weight(&inst)[0], 22);
        assert!(c.is_hamiltonian());
    }

    #[test]
    fn pareto_single_cover() {
        let inst = Instance::new(
            Direction::Directed,
            vec![vec![vec![0, 1], vec![0, 0]], vec![vec![0, 0], vec![1, 0]]],
        )
        .unwrap();
        for backend in [CoverBackend::BitmaskDp, CoverBackend::Enumeration] {
            let p = cover_pareto(&CoverParetoRequest::new(&inst).backend(backend)).unwrap();
            assert_eq!(p.sorted_vectors(), vec![WeightVector::from([1, 1])]);
        }
    }

    #[test]
    fn pareto_two_extremes_n4() {
        // only {0<->1, 2<->3} uses 1->0; 0->1->2->3->0 uses both 1->2 and 3->0
        let mut m1 = vec![vec![0u64; 4]; 4];
        let mut m2 = vec![vec![0u64; 4]; 4];
        m1[1][0] = 10;
        m2[1][2] = 5;
        m2[3][0] = 5;
        let inst = Instance::new(Direction::Directed, vec![m1, m2]).unwrap();
        let mut all = Vec::new();
        enumerate_covers(&inst, |cycles, w| all.push((cycles.to_vec(), w.clone())));
        assert_eq!(all.len(), 9);
        let mut brute = ParetoSet::new(2);
        for (c, w) in &all {
            brute.insert(c.clone(), w.clone()).unwrap();
        }
        assert_eq!(
            brute.sorted_vectors(),
            vec![WeightVector::from([0, 10]), WeightVector::from([10, 0])]
        );
        for backend in [CoverBackend::BitmaskDp, CoverBackend::Enumeration] {
            let p = cover_pareto(&CoverParetoRequest::new(&inst).backend(backend)).unwrap();
            assert_eq!(
                p.sorted_vectors(),
                vec![WeightVector::from([0, 10]), WeightVector::from([10, 0])]
            );
            assert_eq!(p.sorted_vectors(), brute.sorted_vectors());
        }
    }

    #[test]
    fn backend_errors() {
        let inst = Instance::from_fn(Direction::Undirected, 4, 1, |_, _, _| 1).unwrap();
        assert!(matches!(
            cover_pareto(&CoverParetoRequest::new(&inst).backend(CoverBackend::BitmaskDp)),
            Err(Error::Backend(_))
        ));
        let caps = CoverCaps {
            bitmask_dp_max_n: 3,
            enumeration_max_n: 3,
        };
        assert!(matches!(
            cover_pareto(&CoverParetoRequest::new(&inst).caps(caps)),
            Err(Error::Capacity { cap: 3, .. })
        ));
    }

    #[test]
    fn enumeration_counts() {
        let d5 = Instance::from_fn(Direction::Directed, 5, 1, |_, _, _| 1).unwrap();
        let mut c = 0;
        enumerate_covers(&d5, |_, _| c += 1);
        assert_eq!(c, 44); // derangements of 5
        let u6 = Instance::from_fn(Direction::Undirected, 6, 1, |_, _, _| 1).unwrap();
        let mut c = 0;
        enumerate_covers(&u6, |_, _| c += 1);
        assert_eq!(c, 70); // 2-factors of K6
    }

    #[test]
    fn returned_covers_match_their_vectors() {
        let inst = Instance::from_fn(Direction::Directed, 6, 2, |c, i, j| ((i * 7 + j * 3 + c * 5) % 11) as u64).unwrap();
        let p = cover_pareto(&CoverParetoRequest::new(&inst)).unwrap();
        for (c, w) in p.iter() {
            assert_eq!(&c.weight(&inst), w);
            assert_eq!(&inst.weight_of(c.edges().iter()), w);
        }
    }
}
