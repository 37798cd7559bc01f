//! Moves, move systems, the move group and its orbits.

mod general;
mod gf2;
mod identities;
mod orbit;
mod search;

pub use general::{exists_legal_system, GeneralSearch, GENERAL_SYSTEM_THRESHOLD};
pub use gf2::{move_span, GF2Basis};
pub use identities::{
    all_states_trees, clique_orbit_frequency, remove_cone_vertex, restrict_cone_system,
    verify_lawful_antimatching, ConeReduction, LAWFUL_THRESHOLD,
};
pub use orbit::{
    for_each_orbit_state, verify_legal_orbit, verify_with, OrbitReport, OrbitStats, Verdict,
    VerifyOptions, Witness, DEFAULT_MAX_RANK,
};
pub use search::{
    exists_legal_state, exists_legal_state_naive, exists_strongly_legal_state, exists_legal_state_with, search_partition_system,
    PartitionSearch, SearchMode, SearchOptions, EXHAUSTIVE_STATE_THRESHOLD,
    EXHAUSTIVE_SYSTEM_THRESHOLD,
};

use serde::{Deserialize, Serialize};

use crate::bits::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// One move per vertex; several vertices may share the same move.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MoveSystem {
    moves: Vec<VertexSet>,
}

impl MoveSystem {
    pub fn new(moves: Vec<VertexSet>) -> Result<Self> {
        let n = moves.len();
        for m in &moves {
            if m.width() != n {
                return Err(Error::WidthMismatch {
                    expected: n,
                    got: m.width(),
                });
            }
        }
        Ok(MoveSystem { moves })
    }

    /// Colored system: every vertex moves with its whole class.
    /// The classes must partition `0..n`.
    pub fn colored(n: usize, classes: &[VertexSet]) -> Result<Self> {
        let mut moves = vec![None; n];
        for c in classes {
            if c.width() != n {
                return Err(Error::WidthMismatch {
                    expected: n,
                    got: c.width(),
                });
            }
            for v in c.iter() {
                if moves[v].is_some() {
                    return Err(Error::invalid(format!("vertex {v} lies in two classes")));
                }
                moves[v] = Some(c.clone());
            }
        }
        let moves = moves
            .into_iter()
            .enumerate()
            .map(|(v, m)| m.ok_or_else(|| Error::invalid(format!("vertex {v} lies in no class"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(MoveSystem { moves })
    }

    /// Classes given by a colour per vertex.
    pub fn from_coloring(colors: &[usize]) -> Self {
        let n = colors.len();
        let k = colors.iter().max().map_or(0, |m| m + 1);
        let mut classes = vec![VertexSet::empty(n); k];
        for (v, &c) in colors.iter().enumerate() {
            classes[c].insert(v);
        }
        classes.retain(|c| !c.is_empty());
        MoveSystem::colored(n, &classes).expect("a colouring partitions the vertices")
    }

    pub fn n(&self) -> usize {
        self.moves.len()
    }

    pub fn move_at(&self, v: usize) -> &VertexSet {
        &self.moves[v]
    }

    pub fn moves(&self) -> &[VertexSet] {
        &self.moves
    }

    /// Distinct moves, each with the least vertex carrying it, in vertex order.
    pub fn distinct(&self) -> Vec<(usize, &VertexSet)> {
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        for (v, m) in self.moves.iter().enumerate() {
            if seen.insert(m) {
                out.push((v, m));
            }
        }
        out
    }

    /// Classes when every move is shared exactly by its members, as in a colored system.
    pub fn as_partition(&self) -> Option<Vec<VertexSet>> {
        let mut out = Vec::new();
        for (v, m) in self.distinct() {
            if m.iter().any(|u| self.moves[u] != *m) || !m.contains(v) {
                return None;
            }
            out.push(m.clone());
        }
        Some(out)
    }

    /// The system transported along a vertex map `old ↦ map[old]`.
    pub fn relabeled(&self, map: &[usize]) -> Self {
        let n = self.n();
        let mut moves = vec![VertexSet::empty(n); n];
        for (v, m) in self.moves.iter().enumerate() {
            moves[map[v]] = VertexSet::from_iter(n, m.iter().map(|u| map[u]));
        }
        MoveSystem { moves }
    }
}

/// Which move axiom a vertex breaks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "property", rename_all = "snake_case")]
pub enum Violation {
    /// `v ∉ m_v`.
    MissingSelf { vertex: usize },
    /// `m_v` contains neighbours of `v`.
    ContainsNeighbor { vertex: usize, neighbors: Vec<usize> },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::MissingSelf { vertex } => write!(f, "move at {vertex} does not contain {vertex}"),
            Violation::ContainsNeighbor { vertex, neighbors } => {
                write!(f, "move at {vertex} contains neighbours {neighbors:?}")
            }
        }
    }
}

/// Checks both move axioms at every vertex and reports every failure.
///
/// ```
/// use legalsys::{graph::Graph, legal::{validate_system, MoveSystem, Violation}, VertexSet};
/// let g = Graph::path(3);
/// let m = MoveSystem::new(vec![
///     VertexSet::from_iter(3, [0, 2]),
///     VertexSet::from_iter(3, [0]),
///     VertexSet::from_iter(3, [0, 2]),
/// ]).unwrap();
/// let errs = validate_system(&g, &m).unwrap_err();
/// assert_eq!(errs[0], Violation::MissingSelf { vertex: 1 });
/// assert_eq!(errs[1], Violation::ContainsNeighbor { vertex: 1, neighbors: vec![0] });
/// ```
pub fn validate_system(g: &Graph, m: &MoveSystem) -> std::result::Result<(), Vec<Violation>> {
    assert_eq!(g.n(), m.n(), "system width must match the graph");
    let mut out = Vec::new();
    for v in 0..g.n() {
        let mv = m.move_at(v);
        if !mv.contains(v) {
            out.push(Violation::MissingSelf { vertex: v });
        }
        let bad = mv.and(&g.neighbors(v));
        if !bad.is_empty() {
            out.push(Violation::ContainsNeighbor {
                vertex: v,
                neighbors: bad.to_vec(),
            });
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

pub(crate) fn check_system(g: &Graph, m: &MoveSystem, s0: &VertexSet) -> Result<()> {
    if m.n() != g.n() {
        return Err(Error::WidthMismatch {
            expected: g.n(),
            got: m.n(),
        });
    }
    if s0.width() != g.n() {
        return Err(Error::WidthMismatch {
            expected: g.n(),
            got: s0.width(),
        });
    }
    validate_system(g, m).map_err(|v| {
        Error::invalid(
            v.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join("; "),
        )
    })
}
