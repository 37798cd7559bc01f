use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{check_system, move_span, GF2Basis, MoveSystem};
use crate::bits::VertexSet;
use crate::error::{Error, Result};
use crate::graph::{Graph, Scratch};

pub const DEFAULT_MAX_RANK: u32 = 30;

/// Orbits at most this big are walked on one thread.
const SERIAL_LIMIT: u64 = 1 << 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Legal,
    Illegal,
}

/// First illegal state met in reflected binary order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// Position in the reflected binary walk.
    pub index: u64,
    pub state: VertexSet,
    /// One bit per basis row: the state is `s0 + Σ coefficients[j]·rows[j]`.
    pub coefficients: Vec<u8>,
    /// Vertices whose moves, applied to `s0`, reach the state.
    pub moves: VertexSet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitStats {
    pub min_size: usize,
    pub max_size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub rank: u32,
    pub orbit_size: u64,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
    /// State sizes over the whole orbit; absent when the walk stopped early.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub stats: Option<OrbitStats>,
    /// Number of illegal states, counted in exhaustive mode only.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub illegal_states: Option<u64>,
}

impl OrbitReport {
    pub fn is_legal(&self) -> bool {
        self.verdict == Verdict::Legal
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    /// Walk the whole orbit even after a failure.
    pub exhaustive: bool,
    pub max_rank: u32,
    /// Split the walk across the current rayon pool.
    pub parallel: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            exhaustive: false,
            max_rank: DEFAULT_MAX_RANK,
            parallel: true,
        }
    }
}

/// Checks every state of the orbit `s0 + span(m)`.
///
/// ```
/// use legalsys::{graph::Graph, legal::{verify_legal_orbit, MoveSystem}, VertexSet};
/// // path 0-1-2-3 with the colored system {0,2}, {1,3}
/// let g = Graph::path(4);
/// let m = MoveSystem::from_coloring(&[0, 1, 0, 1]);
/// let r = verify_legal_orbit(&g, &m, &VertexSet::from_iter(4, [0])).unwrap();
/// assert!(!r.is_legal());
/// let w = r.witness.unwrap();
/// assert_eq!(w.state, VertexSet::from_iter(4, [2]));
/// assert_eq!(w.moves, VertexSet::from_iter(4, [0]));
/// ```
pub fn verify_legal_orbit(g: &Graph, m: &MoveSystem, s0: &VertexSet) -> Result<OrbitReport> {
    verify_with(g, m, s0, &VerifyOptions::default())
}

#[derive(Clone, Copy, Debug)]
struct ChunkResult {
    first_fail: Option<u64>,
    illegal: u64,
    min: usize,
    max: usize,
}

impl ChunkResult {
    fn empty() -> Self {
        ChunkResult {
            first_fail: None,
            illegal: 0,
            min: usize::MAX,
            max: 0,
        }
    }

    fn merge(self, o: ChunkResult) -> ChunkResult {
        ChunkResult {
            first_fail: match (self.first_fail, o.first_fail) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            },
            illegal: self.illegal + o.illegal,
            min: self.min.min(o.min),
            max: self.max.max(o.max),
        }
    }
}

#[inline]
fn gray(i: u64) -> u64 {
    i ^ (i >> 1)
}

pub fn verify_with(
    g: &Graph,
    m: &MoveSystem,
    s0: &VertexSet,
    opts: &VerifyOptions,
) -> Result<OrbitReport> {
    check_system(g, m, s0)?;
    let basis = move_span(m);
    let rank = basis.rank() as u32;
    if rank > opts.max_rank || rank > 62 {
        return Err(Error::Refused {
            what: format!("move group rank {rank}"),
            limit: opts.max_rank.min(62) as u64,
        });
    }
    let size = 1u64 << rank;
    let stop = AtomicU64::new(u64::MAX);

    let chunk = if opts.parallel && size > SERIAL_LIMIT {
        (size / 1024).max(SERIAL_LIMIT)
    } else {
        size
    };
    let starts: Vec<u64> = (0..size).step_by(chunk as usize).collect();
    let run = |a: u64| {
        let b = (a + chunk).min(size);
        if g.n() <= 64 {
            walk_mask(g, &basis, s0, a, b, &stop, opts.exhaustive)
        } else {
            walk_words(g, &basis, s0, a, b, &stop, opts.exhaustive)
        }
    };
    let total = if starts.len() > 1 {
        starts
            .par_iter()
            .map(|&a| run(a))
            .reduce(ChunkResult::empty, ChunkResult::merge)
    } else {
        run(0)
    };

    let full_walk = opts.exhaustive || total.first_fail.is_none();
    let witness = total.first_fail.map(|i| {
        let c = gray(i);
        Witness {
            index: i,
            state: s0.xor(&basis.combine(c)),
            coefficients: (0..rank).map(|j| (c >> j & 1) as u8).collect(),
            moves: basis.combine_provenance(c),
        }
    });
    Ok(OrbitReport {
        rank,
        orbit_size: size,
        verdict: if witness.is_some() {
            Verdict::Illegal
        } else {
            Verdict::Legal
        },
        witness,
        stats: full_walk.then_some(OrbitStats {
            min_size: total.min,
            max_size: total.max,
        }),
        illegal_states: opts.exhaustive.then_some(total.illegal),
    })
}

fn walk_mask(
    g: &Graph,
    basis: &GF2Basis,
    s0: &VertexSet,
    a: u64,
    b: u64,
    stop: &AtomicU64,
    exhaustive: bool,
) -> ChunkResult {
    let rows: Vec<u64> = basis.rows.iter().map(VertexSet::mask).collect();
    let mut state = s0.mask();
    let c = gray(a);
    for (j, r) in rows.iter().enumerate() {
        if c >> j & 1 == 1 {
            state ^= r;
        }
    }
    let mut res = ChunkResult::empty();
    for i in a..b {
        if i > a {
            state ^= rows[i.trailing_zeros() as usize];
            if !exhaustive && i & 255 == 0 && i > stop.load(Ordering::Relaxed) {
                break;
            }
        }
        let k = state.count_ones() as usize;
        res.min = res.min.min(k);
        res.max = res.max.max(k);
        if !g.legal_mask(state) {
            res.illegal += 1;
            if res.first_fail.is_none() {
                res.first_fail = Some(i);
                if !exhaustive {
                    stop.fetch_min(i, Ordering::Relaxed);
                    break;
                }
            }
        }
    }
    res
}

fn walk_words(
    g: &Graph,
    basis: &GF2Basis,
    s0: &VertexSet,
    a: u64,
    b: u64,
    stop: &AtomicU64,
    exhaustive: bool,
) -> ChunkResult {
    let mut sc = Scratch::new(g);
    let mut state = s0.xor(&basis.combine(gray(a)));
    let mut res = ChunkResult::empty();
    for i in a..b {
        if i > a {
            state.xor_with(&basis.rows[i.trailing_zeros() as usize]);
            if !exhaustive && i & 255 == 0 && i > stop.load(Ordering::Relaxed) {
                break;
            }
        }
        let k = state.len();
        res.min = res.min.min(k);
        res.max = res.max.max(k);
        if !g.legal_words(state.words(), &mut sc) {
            res.illegal += 1;
            if res.first_fail.is_none() {
                res.first_fail = Some(i);
                if !exhaustive {
                    stop.fetch_min(i, Ordering::Relaxed);
                    break;
                }
            }
        }
    }
    res
}

/// Calls `f` on every orbit state in reflected binary order until it returns `false`.
pub fn for_each_orbit_state(
    basis: &GF2Basis,
    s0: &VertexSet,
    mut f: impl FnMut(&VertexSet) -> bool,
) {
    let size = 1u64 << basis.rank();
    let mut state = s0.clone();
    for i in 0..size {
        if i > 0 {
            state.xor_with(&basis.rows[i.trailing_zeros() as usize]);
        }
        if !f(&state) {
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_legal_state;
    use std::collections::HashSet;

    fn example() -> (Graph, MoveSystem) {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        let m = MoveSystem::from_coloring(&[0, 1, 2, 1]);
        (g, m)
    }

    #[test]
    fn walk_visits_each_state_once() {
        let (_, m) = example();
        let b = move_span(&m);
        let mut seen = HashSet::new();
        for_each_orbit_state(&b, &VertexSet::from_iter(4, [3]), |s| {
            assert!(seen.insert(s.clone()));
            true
        });
        assert_eq!(seen.len(), 8);
    }

    #[test]
    fn serial_and_parallel_agree_on_wide_graphs() {
        // 70-cycle with a colored system of 14 classes {i, i+14, …}
        let n = 70;
        let g = Graph::cycle(n);
        let colors: Vec<usize> = (0..n).map(|v| v % 14).collect();
        let m = MoveSystem::from_coloring(&colors);
        let s0 = VertexSet::from_iter(n, 0..35);
        let a = verify_with(&g, &m, &s0, &VerifyOptions { parallel: false, ..Default::default() }).unwrap();
        let b = verify_with(&g, &m, &s0, &VerifyOptions::default()).unwrap();
        assert_eq!(a, b);
        assert!(!a.is_legal());
        assert!(!is_legal_state(&g, &a.witness.unwrap().state));
        let ea = verify_with(&g, &m, &s0, &VerifyOptions { exhaustive: true, parallel: false, ..Default::default() }).unwrap();
        let eb = verify_with(&g, &m, &s0, &VerifyOptions { exhaustive: true, ..Default::default() }).unwrap();
        assert_eq!(ea, eb);
    }

    #[test]
    fn rank_cap_refuses() {
        let g = Graph::new(8);
        let m = MoveSystem::from_coloring(&[0, 1, 2, 3, 4, 5, 6, 7]);
        let opts = VerifyOptions { max_rank: 4, ..Default::default() };
        let r = verify_with(&g, &m, &VertexSet::empty(8), &opts);
        assert!(matches!(r, Err(Error::Refused { .. })));
    }
}
