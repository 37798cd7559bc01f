use num_rational::Ratio;

use super::{
    check_system, for_each_orbit_state, move_span, verify_legal_orbit, verify_with, MoveSystem,
    OrbitReport, VerifyOptions, DEFAULT_MAX_RANK,
};
use crate::bits::VertexSet;
use crate::error::{Error, Result};
use crate::graph::{Antimatching, Graph, Scratch};

pub const LAWFUL_THRESHOLD: usize = 24;

/// Fraction of the orbit `s0 + span(m)` whose states contain the clique `k`.
///
/// Computed from the restriction of the move group to `k`: the states
/// containing `k` form a coset of the kernel or nothing.
pub fn clique_orbit_frequency(
    g: &Graph,
    m: &MoveSystem,
    s0: &VertexSet,
    k: &VertexSet,
) -> Result<Ratio<i128>> {
    check_system(g, m, s0)?;
    if k.width() != g.n() {
        return Err(Error::WidthMismatch {
            expected: g.n(),
            got: k.width(),
        });
    }
    if !g.is_clique(k) {
        return Err(Error::invalid(format!("{k} is not a clique")));
    }
    let members = k.to_vec();
    if members.len() > 64 {
        return Err(Error::invalid("clique too large"));
    }
    let restrict = |s: &VertexSet| -> u64 {
        members
            .iter()
            .enumerate()
            .filter(|(_, &v)| s.contains(v))
            .fold(0u64, |a, (i, _)| a | 1 << i)
    };
    let basis = move_span(m);
    let mut rows: Vec<u64> = Vec::new();
    for r in &basis.rows {
        let mut x = restrict(r);
        for &b in &rows {
            x = x.min(x ^ b);
        }
        if x != 0 {
            rows.push(x);
            rows.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    let all = if members.len() == 64 {
        !0
    } else {
        (1u64 << members.len()) - 1
    };
    let mut target = all ^ restrict(s0);
    for &b in &rows {
        target = target.min(target ^ b);
    }
    if target != 0 {
        return Ok(Ratio::from_integer(0));
    }
    Ok(Ratio::new(1, 1i128 << rows.len()))
}

/// Whether every orbit state induces a forest.
pub fn all_states_trees(g: &Graph, m: &MoveSystem, s0: &VertexSet) -> Result<bool> {
    check_system(g, m, s0)?;
    let basis = move_span(m);
    if basis.rank() as u32 > DEFAULT_MAX_RANK {
        return Err(Error::Refused {
            what: format!("move group rank {}", basis.rank()),
            limit: DEFAULT_MAX_RANK as u64,
        });
    }
    let mut sc = Scratch::new(g);
    let mut ok = true;
    for_each_orbit_state(&basis, s0, |s| {
        ok = induces_forest(g, s, &mut sc);
        ok
    });
    Ok(ok)
}

fn induces_forest(g: &Graph, s: &VertexSet, sc: &mut Scratch) -> bool {
    let size = s.len();
    if size == 0 {
        return true;
    }
    let twice_edges: usize = s
        .iter()
        .map(|v| {
            g.row(v)
                .iter()
                .zip(s.words())
                .map(|(a, b)| (a & b).count_ones() as usize)
                .sum::<usize>()
        })
        .sum();
    let edges = twice_edges / 2;
    if edges >= size {
        return false;
    }
    if g.connected_words(s.words(), sc) {
        return edges == size - 1;
    }
    let (h, _) = g.induced_subgraph(s);
    edges + h.components().len() == size
}

/// Deletes a vertex whose neighbourhood induces a 4-cycle.
pub fn remove_cone_vertex(g: &Graph, v: usize) -> Result<Graph> {
    if v >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
    }
    let nb = g.neighbor_vec(v);
    let square = nb.len() == 4
        && nb.iter().all(|&a| nb.iter().filter(|&&b| g.has_edge(a, b)).count() == 2)
        && {
            let (link, _) = g.induced_subgraph(&g.neighbors(v));
            link.is_connected()
        };
    if !square {
        return Err(Error::invalid(format!(
            "neighbourhood of {} is not a 4-cycle",
            g.label(v)
        )));
    }
    Ok(g.remove_vertex(v))
}

#[derive(Clone, Debug)]
pub struct ConeReduction {
    pub graph: Graph,
    pub system: MoveSystem,
    pub state: VertexSet,
    /// Verification of the restricted system on the smaller graph.
    pub report: OrbitReport,
}

/// Removes a cone vertex over a 4-cycle and restricts a legal system to what remains.
pub fn restrict_cone_system(
    g: &Graph,
    v: usize,
    m: &MoveSystem,
    s0: &VertexSet,
) -> Result<ConeReduction> {
    let reduced = remove_cone_vertex(g, v)?;
    if !verify_legal_orbit(g, m, s0)?.is_legal() {
        return Err(Error::invalid("input system is not legal"));
    }
    let n = g.n();
    let shrink = |s: &VertexSet| {
        VertexSet::from_iter(
            n - 1,
            s.iter().filter(|&u| u != v).map(|u| if u > v { u - 1 } else { u }),
        )
    };
    let moves: Vec<VertexSet> = (0..n).filter(|&u| u != v).map(|u| shrink(m.move_at(u))).collect();
    let system = MoveSystem::new(moves)?;
    let state = shrink(s0);
    let report = verify_legal_orbit(&reduced, &system, &state)?;
    Ok(ConeReduction {
        graph: reduced,
        system,
        state,
        report,
    })
}

/// Whether every transversal of the antimatching is a legal state.
///
/// ```
/// use legalsys::{graph::Graph, legal::verify_lawful_antimatching};
/// assert!(verify_lawful_antimatching(&Graph::cycle(4), &vec![(0, 2), (1, 3)]).unwrap());
/// ```
pub fn verify_lawful_antimatching(g: &Graph, am: &Antimatching) -> Result<bool> {
    let n = g.n();
    let mut seen = vec![false; n];
    for &(a, b) in am {
        for x in [a, b] {
            if x >= n {
                return Err(Error::VertexOutOfRange { vertex: x, n });
            }
            if seen[x] {
                return Err(Error::invalid(format!("vertex {x} in two pairs")));
            }
            seen[x] = true;
        }
        if a == b || g.has_edge(a, b) {
            return Err(Error::invalid(format!("pair ({a}, {b}) is not a nonadjacent pair")));
        }
    }
    if let Some(v) = seen.iter().position(|&s| !s) {
        return Err(Error::invalid(format!("vertex {v} is in no pair")));
    }
    if am.len() > LAWFUL_THRESHOLD {
        return Err(Error::Refused {
            what: format!("{} antimatching pairs", am.len()),
            limit: LAWFUL_THRESHOLD as u64,
        });
    }
    if n == 0 {
        return Ok(false);
    }
    let mut moves = vec![VertexSet::empty(n); n];
    for &(a, b) in am {
        let pair = VertexSet::from_iter(n, [a, b]);
        moves[a] = pair.clone();
        moves[b] = pair;
    }
    let system = MoveSystem::new(moves)?;
    let start = VertexSet::from_iter(n, am.iter().map(|p| p.0));
    Ok(verify_with(g, &system, &start, &VerifyOptions::default())?.is_legal())
}
