use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use super::MoveSystem;
use crate::bits::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const GENERAL_SYSTEM_THRESHOLD: usize = 20;

/// Candidate moves over all vertices beyond which the search refuses.
const MAX_CANDIDATES: u64 = 1 << 22;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneralSearch {
    Found { system: MoveSystem, state: VertexSet },
    /// No move system of any shape has a legal orbit. `nodes` counts search nodes.
    None { nodes: u64 },
}

struct Dfs<'a> {
    g: &'a Graph,
    nodes: &'a AtomicU64,
    budget: u64,
}

impl Dfs<'_> {
    fn usable(&self, v: usize, w: u64) -> bool {
        w >> v & 1 == 1 && w & self.g.row(v)[0] == 0
    }

    /// Final span of a legal system extending `span`, if one exists. Each
    /// open vertex carries its candidates that survived the parent's orbit,
    /// so only states from `fresh` on are checked.
    fn run(
        &self,
        orbit: &[u64],
        fresh: usize,
        span: &[u64],
        open: &[(usize, Vec<u64>)],
    ) -> std::result::Result<Option<Vec<u64>>, ()> {
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
            return Err(());
        }
        let mut still: Vec<(usize, Vec<u64>)> = Vec::with_capacity(open.len());
        for (v, cands) in open {
            if span.iter().any(|&w| self.usable(*v, w)) {
                continue;
            }
            let ok: Vec<u64> = cands
                .iter()
                .copied()
                .filter(|&m| orbit[fresh..].iter().all(|&s| self.g.legal_mask(s ^ m)))
                .collect();
            if ok.is_empty() {
                return Ok(None);
            }
            still.push((*v, ok));
        }
        let Some(pos) = (0..still.len()).min_by_key(|&i| still[i].1.len()) else {
            return Ok(Some(span.to_vec()));
        };
        for &m in &still[pos].1 {
            let mut orbit2 = orbit.to_vec();
            orbit2.extend(orbit.iter().map(|s| s ^ m));
            let mut span2 = span.to_vec();
            span2.extend(span.iter().map(|w| w ^ m));
            if let Some(found) = self.run(&orbit2, orbit.len(), &span2, &still)? {
                return Ok(Some(found));
            }
        }
        Ok(None)
    }
}

/// Exhaustive search over every move system, colored or not, for one with
/// a legal orbit.
///
/// Start states are taken to contain the last vertex (complements of a
/// legal orbit form a legal orbit). Moves are chosen one vertex at a time,
/// most constrained vertex first; a vertex needs no choice once the group
/// generated so far already holds a valid move for it.
///
/// ```
/// use legalsys::{graph::Graph, legal::{exists_legal_system, GeneralSearch}};
/// assert!(matches!(exists_legal_system(&Graph::cycle(4), 1_000_000).unwrap(), GeneralSearch::Found { .. }));
/// assert!(matches!(exists_legal_system(&Graph::path(4), 1_000_000).unwrap(), GeneralSearch::None { .. }));
/// ```
pub fn exists_legal_system(g: &Graph, budget: u64) -> Result<GeneralSearch> {
    let n = g.n();
    if n > GENERAL_SYSTEM_THRESHOLD {
        return Err(Error::Refused {
            what: format!("exhaustive search over all move systems on {n} vertices"),
            limit: GENERAL_SYSTEM_THRESHOLD as u64,
        });
    }
    if n < 2 {
        return Ok(GeneralSearch::None { nodes: 0 });
    }
    let full = (1u64 << n) - 1;
    let cands: Vec<Vec<u64>> = (0..n)
        .map(|v| {
            let free = full & !g.row(v)[0] & !(1 << v);
            let mut out = Vec::with_capacity(1 << free.count_ones());
            let mut sub = free;
            loop {
                out.push(sub | 1 << v);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & free;
            }
            out.reverse();
            out
        })
        .collect();
    let total: u64 = cands.iter().map(|c| c.len() as u64).sum();
    if total > MAX_CANDIDATES {
        return Err(Error::Refused {
            what: format!("{total} candidate moves"),
            limit: MAX_CANDIDATES,
        });
    }
    let nodes = AtomicU64::new(0);
    let dfs = Dfs {
        g,
        nodes: &nodes,
        budget,
    };
    let top = 1u64 << (n - 1);
    let mut open: Vec<(usize, Vec<u64>)> = cands.iter().cloned().enumerate().collect();
    open.sort_by_key(|o| o.1.len());
    let hit = (0..top)
        .into_par_iter()
        .map(|low| low | top)
        .filter(|&s| g.legal_mask(s))
        .map(|s| dfs.run(&[s], 0, &[0], &open).map(|r| r.map(|span| (s, span))))
        .find_first(|r| !matches!(r, Ok(None)));
    match hit {
        Some(Err(())) => Err(Error::Timeout { budget }),
        Some(Ok(Some((s, span)))) => {
            let moves = (0..n)
                .map(|v| {
                    let w = span
                        .iter()
                        .copied()
                        .filter(|&w| dfs.usable(v, w))
                        .min_by_key(|w| (w.count_ones(), *w))
                        .expect("every vertex has a move in the final group");
                    VertexSet::from_mask(n, w)
                })
                .collect();
            Ok(GeneralSearch::Found {
                system: MoveSystem::new(moves)?,
                state: VertexSet::from_mask(n, s),
            })
        }
        _ => Ok(GeneralSearch::None {
            nodes: nodes.load(Ordering::Relaxed),
        }),
    }
}
