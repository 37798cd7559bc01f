use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{verify_with, MoveSystem, VerifyOptions};
use crate::bits::VertexSet;
use crate::error::{Error, Result};
use crate::graph::{is_strongly_legal_state, Graph};

pub const EXHAUSTIVE_STATE_THRESHOLD: usize = 28;
pub const EXHAUSTIVE_SYSTEM_THRESHOLD: usize = 24;

/// First legal state in order of size, then lexicographic order, among
/// states containing vertex 0; `None` certifies there is none.
///
/// ```
/// use legalsys::{graph::Graph, legal::exists_legal_state, VertexSet};
/// assert_eq!(exists_legal_state(&Graph::path(2)).unwrap(), Some(VertexSet::from_iter(2, [0])));
/// assert_eq!(exists_legal_state(&Graph::new(3)).unwrap(), None);
/// ```
pub fn exists_legal_state(g: &Graph) -> Result<Option<VertexSet>> {
    exists_legal_state_with(g, EXHAUSTIVE_STATE_THRESHOLD)
}

pub fn exists_legal_state_with(g: &Graph, threshold: usize) -> Result<Option<VertexSet>> {
    let n = g.n();
    if n > threshold || n > 64 {
        return Err(Error::Refused {
            what: format!("exhaustive state search on {n} vertices"),
            limit: threshold.min(64) as u64,
        });
    }
    for size in 1..n {
        let mut idx: Vec<usize> = (1..size).collect();
        loop {
            let mask = idx.iter().fold(1u64, |m, &i| m | 1 << i);
            if g.legal_mask(mask) {
                return Ok(Some(VertexSet::from_mask(n, mask)));
            }
            if !next_combination(&mut idx, n) {
                break;
            }
        }
    }
    Ok(None)
}

/// Next `k`-subset of `1..n` in lexicographic order.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// First strongly legal state containing vertex 0, scanning masks in
/// increasing order; `None` certifies there is none.
pub fn exists_strongly_legal_state(g: &Graph) -> Result<Option<VertexSet>> {
    let n = g.n();
    if n > EXHAUSTIVE_STATE_THRESHOLD {
        return Err(Error::Refused {
            what: format!("exhaustive strongly legal search on {n} vertices"),
            limit: EXHAUSTIVE_STATE_THRESHOLD as u64,
        });
    }
    if n < 2 {
        return Ok(None);
    }
    let full = (1u64 << n) - 1;
    let rows: Vec<u64> = (0..n).map(|v| g.row(v)[0]).collect();
    let found = (0..1u64 << (n - 1)).into_par_iter().find_first(|&half| {
        let s = half << 1 | 1;
        if s == full {
            return false;
        }
        let c = full & !s;
        let crossing = rows.iter().enumerate().all(|(v, &r)| {
            let other = if s >> v & 1 == 1 { c } else { s };
            r & other != 0
        });
        crossing && g.legal_mask(s)
    });
    Ok(found.map(|half| VertexSet::from_mask(n, half << 1 | 1)))
}

/// Reference version: every subset, smallest first, ties by sorted member list.
pub fn exists_legal_state_naive(g: &Graph) -> Option<VertexSet> {
    let n = g.n();
    let mut all: Vec<Vec<usize>> = (0..1u64 << n)
        .filter(|m| m & 1 == 1)
        .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
        .collect();
    all.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    all.into_iter()
        .map(|s| VertexSet::from_iter(n, s))
        .find(|s| crate::graph::is_legal_state(g, s))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    /// Every partition into independent classes, every orbit. Certifies absence.
    Exhaustive,
    /// Proper colourings with a growing number of colours.
    Colorings,
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Colourings to examine before giving up (coloring-driven mode).
    pub max_colorings: u64,
    /// Largest number of colours tried; `None` means up to `n`.
    pub max_colors: Option<usize>,
    /// Random states drawn to seed orbits on large graphs.
    pub samples: usize,
    pub seed: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            max_colorings: 1_000_000,
            max_colors: None,
            samples: 10_000,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartitionSearch {
    Found {
        system: MoveSystem,
        state: VertexSet,
        classes: Vec<VertexSet>,
        /// Partitions (or colourings) examined up to and including the hit.
        examined: u64,
    },
    /// No partition system has a legal orbit (exhaustive mode only).
    None { examined: u64 },
    Inconclusive { examined: u64 },
}

impl PartitionSearch {
    pub fn found(&self) -> Option<(&MoveSystem, &VertexSet)> {
        match self {
            PartitionSearch::Found { system, state, .. } => Some((system, state)),
            _ => None,
        }
    }
}

/// Looks for a colored system (moves = classes of a partition into
/// independent sets) together with a start state whose orbit is legal.
pub fn search_partition_system(
    g: &Graph,
    mode: SearchMode,
    opts: &SearchOptions,
) -> Result<PartitionSearch> {
    let n = g.n();
    match mode {
        SearchMode::Exhaustive => {
            if n > EXHAUSTIVE_SYSTEM_THRESHOLD {
                return Err(Error::Refused {
                    what: format!("exhaustive partition search on {n} vertices"),
                    limit: EXHAUSTIVE_SYSTEM_THRESHOLD as u64,
                });
            }
            let table = LegalTable::new(g);
            let mut examined = 0;
            let mut hit = None;
            partitions(g, None, &mut |classes| {
                examined += 1;
                match table.legal_coset(classes) {
                    Some(s) => {
                        hit = Some((classes.to_vec(), s));
                        false
                    }
                    None => true,
                }
            });
            Ok(finish(n, hit, examined, false))
        }
        SearchMode::Colorings => {
            if n > 64 {
                return Err(Error::Refused {
                    what: format!("colouring search on {n} vertices"),
                    limit: 64,
                });
            }
            let lower = clique_lower_bound(g).max(1);
            let upper = opts.max_colors.unwrap_or(n).min(n);
            let table = (n <= EXHAUSTIVE_SYSTEM_THRESHOLD).then(|| LegalTable::new(g));
            let seeds = if table.is_none() {
                sample_seeds(g, opts)
            } else {
                Vec::new()
            };
            let mut examined = 0u64;
            let mut hit = None;
            let mut budget_hit = false;
            for k in lower..=upper {
                partitions(g, Some(k), &mut |classes| {
                    if examined >= opts.max_colorings {
                        budget_hit = true;
                        return false;
                    }
                    examined += 1;
                    let found = match &table {
                        Some(t) => t.legal_coset(classes),
                        None => seeded_coset(g, classes, &seeds),
                    };
                    match found {
                        Some(s) => {
                            hit = Some((classes.to_vec(), s));
                            false
                        }
                        None => true,
                    }
                });
                if hit.is_some() || budget_hit {
                    break;
                }
            }
            Ok(finish(n, hit, examined, true))
        }
    }
}

fn finish(
    n: usize,
    hit: Option<(Vec<u64>, u64)>,
    examined: u64,
    inconclusive: bool,
) -> PartitionSearch {
    match hit {
        Some((classes, s)) => {
            let classes: Vec<VertexSet> = classes.iter().map(|&c| VertexSet::from_mask(n, c)).collect();
            PartitionSearch::Found {
                system: MoveSystem::colored(n, &classes).expect("partition"),
                state: VertexSet::from_mask(n, s),
                classes,
                examined,
            }
        }
        None if inconclusive => PartitionSearch::Inconclusive { examined },
        None => PartitionSearch::None { examined },
    }
}

/// Size of a greedily grown clique.
fn clique_lower_bound(g: &Graph) -> usize {
    let mut best = 0;
    for v in 0..g.n() {
        let mut clique = vec![v];
        for u in g.neighbor_iter(v) {
            if clique.iter().all(|&w| g.has_edge(u, w)) {
                clique.push(u);
            }
        }
        best = best.max(clique.len());
    }
    best
}

/// Enumerates partitions of `V` into independent classes (exactly `k` of
/// them when given), each partition once. Vertices are placed in index order.
/// Masks require `n ≤ 64`. Stops when `visit` returns `false`.
fn partitions(g: &Graph, k: Option<usize>, visit: &mut dyn FnMut(&[u64]) -> bool) {
    fn rec(
        g: &Graph,
        v: usize,
        k: Option<usize>,
        classes: &mut Vec<u64>,
        visit: &mut dyn FnMut(&[u64]) -> bool,
    ) -> bool {
        let n = g.n();
        if v == n {
            return match k {
                Some(k) if classes.len() != k => true,
                _ => visit(classes),
            };
        }
        if let Some(k) = k {
            // not enough vertices left to open the missing classes
            if classes.len() + (n - v) < k {
                return true;
            }
        }
        let nb = g.row(v)[0];
        for i in 0..classes.len() {
            if classes[i] & nb == 0 {
                classes[i] |= 1 << v;
                let go = rec(g, v + 1, k, classes, visit);
                classes[i] &= !(1 << v);
                if !go {
                    return false;
                }
            }
        }
        if k.is_none_or(|k| classes.len() < k) {
            classes.push(1 << v);
            let go = rec(g, v + 1, k, classes, visit);
            classes.pop();
            if !go {
                return false;
            }
        }
        true
    }
    assert!(g.n() <= 64);
    rec(g, 0, k, &mut Vec::new(), visit);
}

/// Legality of every subset of a small graph.
struct LegalTable {
    n: usize,
    bits: Vec<u64>,
}

impl LegalTable {
    fn new(g: &Graph) -> Self {
        let n = g.n();
        assert!(n <= EXHAUSTIVE_SYSTEM_THRESHOLD);
        let total = 1usize << n;
        let words = total.div_ceil(64);
        let bits: Vec<u64> = (0..words)
            .into_par_iter()
            .map(|w| {
                let mut out = 0u64;
                for b in 0..64 {
                    let s = (w * 64 + b) as u64;
                    if (s as usize) < total && g.legal_mask(s) {
                        out |= 1 << b;
                    }
                }
                out
            })
            .collect();
        LegalTable { n, bits }
    }

    #[inline]
    fn get(&self, s: u64) -> bool {
        self.bits[(s >> 6) as usize] >> (s & 63) & 1 == 1
    }

    /// A start state whose orbit under the class moves is legal.
    ///
    /// Each coset has exactly one representative containing the least vertex
    /// of every class, so only those are tried.
    fn legal_coset(&self, classes: &[u64]) -> Option<u64> {
        let full = if self.n == 64 { !0 } else { (1u64 << self.n) - 1 };
        let lows: u64 = classes.iter().map(|c| c & c.wrapping_neg()).fold(0, |a, b| a | b);
        let free = full & !lows;
        let k = classes.len();
        let mut sub = 0u64;
        loop {
            let s = sub | lows;
            if self.get(s) && self.orbit_legal(s, classes, k) {
                return Some(s);
            }
            sub = sub.wrapping_sub(free) & free;
            if sub == 0 {
                return None;
            }
        }
    }

    fn orbit_legal(&self, s: u64, classes: &[u64], k: usize) -> bool {
        let mut state = s;
        for i in 1u64..1 << k {
            state ^= classes[i.trailing_zeros() as usize];
            if !self.get(state) {
                return false;
            }
        }
        true
    }
}

/// Strongly legal states found by random sampling.
fn sample_seeds(g: &Graph, opts: &SearchOptions) -> Vec<VertexSet> {
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut out = Vec::new();
    for _ in 0..opts.samples {
        let s = VertexSet::from_iter(n, (0..n).filter(|_| rng.random_bool(0.5)));
        if is_strongly_legal_state(g, &s) && !out.contains(&s) {
            out.push(s);
        }
    }
    out
}

/// Tries one-vertex-per-class unions and the sampled seeds as starts.
fn seeded_coset(g: &Graph, classes: &[u64], seeds: &[VertexSet]) -> Option<u64> {
    let n = g.n();
    let sets: Vec<VertexSet> = classes.iter().map(|&c| VertexSet::from_mask(n, c)).collect();
    let system = MoveSystem::colored(n, &sets).ok()?;
    let opts = VerifyOptions {
        parallel: false,
        ..Default::default()
    };
    let mut starts: Vec<VertexSet> = Vec::new();
    // least vertex of each class, then each class's second vertex swapped in
    let lows = VertexSet::from_iter(n, sets.iter().filter_map(VertexSet::first));
    starts.push(lows.clone());
    for c in &sets {
        if let Some(second) = c.iter().nth(1) {
            let mut s = lows.clone();
            s.remove(c.first().unwrap());
            s.insert(second);
            starts.push(s);
        }
    }
    starts.extend(seeds.iter().cloned());
    starts
        .into_iter()
        .find(|s| {
            verify_with(g, &system, s, &opts)
                .map(|r| r.is_legal())
                .unwrap_or(false)
        })
        .map(|s| s.mask())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_naive_scan_on_small_graphs() {
        let mut graphs = vec![Graph::path(5), Graph::cycle(6), Graph::complete(4), Graph::new(4)];
        for n in 5..=9 {
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if (u * 5 + v * 7 + n) % 4 == 0 {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            graphs.push(g);
        }
        for g in graphs {
            assert_eq!(exists_legal_state(&g).unwrap(), exists_legal_state_naive(&g), "{g:?}");
        }
    }

    #[test]
    fn refuses_large_graphs() {
        assert!(exists_legal_state(&Graph::cycle(29)).is_err());
    }

    #[test]
    fn edgeless_pair_moves_as_one_class() {
        let g = Graph::new(2);
        let r = search_partition_system(&g, SearchMode::Exhaustive, &SearchOptions::default()).unwrap();
        let PartitionSearch::Found { classes, state, .. } = r else {
            panic!("expected a system");
        };
        assert_eq!(classes, vec![VertexSet::from_iter(2, [0, 1])]);
        assert_eq!(state, VertexSet::from_iter(2, [0]));
    }

    #[test]
    fn singleton_moves_reach_the_empty_state() {
        let g = Graph::new(2);
        let m = MoveSystem::from_coloring(&[0, 1]);
        let r = crate::legal::verify_legal_orbit(&g, &m, &VertexSet::from_iter(2, [0])).unwrap();
        assert!(!r.is_legal());
    }

    #[test]
    fn partition_count_on_edgeless_graph_is_bell_number() {
        let g = Graph::new(5);
        let mut c = 0;
        partitions(&g, None, &mut |_| {
            c += 1;
            true
        });
        assert_eq!(c, 52);
        let mut c3 = 0;
        partitions(&g, Some(3), &mut |_| {
            c3 += 1;
            true
        });
        assert_eq!(c3, 25);
    }

    #[test]
    fn four_cycle_has_a_colored_system() {
        let g = Graph::cycle(4);
        let r = search_partition_system(&g, SearchMode::Exhaustive, &SearchOptions::default()).unwrap();
        let (m, s) = r.found().unwrap();
        assert!(crate::legal::verify_legal_orbit(&g, m, s).unwrap().is_legal());
    }
}
