//! Rotation systems, faces, vertex–face incidence graphs and the
//! reflection-group condition checks.

mod barycentric;
mod checks;
pub mod cubic;
mod vf;

pub use barycentric::{barycentric_skeleton, Barycentric};
pub use checks::{
    cusped_check, pogorelov_check, relhyp_quads_check, tbws_check, Condition, ReflectionVerdict,
    TbwsVerdict,
};
pub use vf::{hamilton_to_state, state_to_hamilton, vf_graph, vf_system, VFGraph};

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A graph with a cyclic order of neighbours at every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedGraph {
    graph: Graph,
    rotation: Vec<Vec<usize>>,
}

/// Faces traced from a rotation system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Faces {
    /// Each face as the cyclic sequence of dart tails.
    pub cycles: Vec<Vec<usize>>,
    dart_face: HashMap<(usize, usize), usize>,
}

impl Faces {
    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    /// Face to which the dart `u → v` belongs.
    pub fn face_of(&self, u: usize, v: usize) -> Option<usize> {
        self.dart_face.get(&(u, v)).copied()
    }
}

impl EmbeddedGraph {
    /// Checks that `rotation[v]` lists each neighbour of `v` exactly once.
    pub fn new(graph: Graph, rotation: Vec<Vec<usize>>) -> Result<Self> {
        if rotation.len() != graph.n() {
            return Err(Error::invalid(format!(
                "rotation has {} entries for {} vertices",
                rotation.len(),
                graph.n()
            )));
        }
        for (v, rot) in rotation.iter().enumerate() {
            let mut sorted = rot.clone();
            sorted.sort_unstable();
            if sorted != graph.neighbor_vec(v) {
                return Err(Error::Rotation {
                    vertex: v,
                    reason: format!("{rot:?} is not an ordering of the neighbours"),
                });
            }
        }
        Ok(EmbeddedGraph { graph, rotation })
    }

    /// Rotation from a straight-line drawing: neighbours sorted counterclockwise.
    pub fn from_straight_line(graph: Graph, coords: &[(f64, f64)]) -> Result<Self> {
        if coords.len() != graph.n() {
            return Err(Error::invalid("one coordinate pair per vertex"));
        }
        let rotation = (0..graph.n())
            .map(|v| {
                let (x, y) = coords[v];
                let mut nb = graph.neighbor_vec(v);
                nb.sort_by(|&a, &b| {
                    let ta = (coords[a].1 - y).atan2(coords[a].0 - x);
                    let tb = (coords[b].1 - y).atan2(coords[b].0 - x);
                    ta.total_cmp(&tb)
                });
                nb
            })
            .collect();
        EmbeddedGraph::new(graph, rotation)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn rotation(&self) -> &[Vec<usize>] {
        &self.rotation
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// Neighbour after `u` in the rotation at `v`.
    pub fn succ(&self, v: usize, u: usize) -> usize {
        let rot = &self.rotation[v];
        let i = rot.iter().position(|&x| x == u).expect("u is a neighbour of v");
        rot[(i + 1) % rot.len()]
    }

    /// The mirror image: every rotation reversed.
    pub fn mirrored(&self) -> Self {
        EmbeddedGraph {
            graph: self.graph.clone(),
            rotation: self
                .rotation
                .iter()
                .map(|r| r.iter().rev().copied().collect())
                .collect(),
        }
    }

    /// The embedding transported along a vertex map `old ↦ map[old]` onto `target`.
    pub fn transported(&self, target: &Graph, map: &[usize]) -> Result<Self> {
        let mut rotation = vec![Vec::new(); self.n()];
        for (v, rot) in self.rotation.iter().enumerate() {
            rotation[map[v]] = rot.iter().map(|&u| map[u]).collect();
        }
        EmbeddedGraph::new(target.clone(), rotation)
    }

    pub fn faces(&self) -> Result<Faces> {
        trace_faces(self)
    }
}

/// Traces faces: the dart after `u → v` is `v → succ_v(u)`.
///
/// Checks Euler's formula `V − E + F = 2` when the graph is connected and has an edge.
///
/// ```
/// use legalsys::{graph::Graph, planar::{trace_faces, EmbeddedGraph}};
/// let tri = EmbeddedGraph::new(Graph::cycle(3), vec![vec![1, 2], vec![2, 0], vec![0, 1]]).unwrap();
/// assert_eq!(trace_faces(&tri).unwrap().len(), 2);
/// ```
pub fn trace_faces(e: &EmbeddedGraph) -> Result<Faces> {
    let g = &e.graph;
    let mut pos: HashMap<(usize, usize), usize> = HashMap::new();
    for (v, rot) in e.rotation.iter().enumerate() {
        for (i, &u) in rot.iter().enumerate() {
            pos.insert((v, u), i);
        }
    }
    let succ = |v: usize, u: usize| -> usize {
        let rot = &e.rotation[v];
        rot[(pos[&(v, u)] + 1) % rot.len()]
    };
    let mut dart_face = HashMap::new();
    let mut cycles = Vec::new();
    for (a, b) in g.edges() {
        for (u0, v0) in [(a, b), (b, a)] {
            if dart_face.contains_key(&(u0, v0)) {
                continue;
            }
            let id = cycles.len();
            let mut cyc = Vec::new();
            let (mut u, mut v) = (u0, v0);
            loop {
                if dart_face.insert((u, v), id).is_some() {
                    return Err(Error::Rotation {
                        vertex: u,
                        reason: "face tracing revisits a dart".into(),
                    });
                }
                cyc.push(u);
                let w = succ(v, u);
                u = v;
                v = w;
                if (u, v) == (u0, v0) {
                    break;
                }
            }
            cycles.push(cyc);
        }
    }
    let (nv, ne, nf) = (g.n() as i64, g.edge_count() as i64, cycles.len() as i64);
    if ne > 0 && g.is_connected() && nv - ne + nf != 2 {
        return Err(Error::invalid(format!(
            "rotation system is not spherical: V − E + F = {}",
            nv - ne + nf
        )));
    }
    Ok(Faces { cycles, dart_face })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square_with_diagonal() -> EmbeddedGraph {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        EmbeddedGraph::from_straight_line(g, &[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]).unwrap()
    }

    #[test]
    fn straight_line_faces() {
        let f = square_with_diagonal().faces().unwrap();
        assert_eq!(f.len(), 3);
        let mut sizes: Vec<usize> = f.cycles.iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![3, 3, 4]);
    }

    #[test]
    fn every_dart_on_one_face() {
        let e = square_with_diagonal();
        let f = e.faces().unwrap();
        for (u, v) in e.graph().edges() {
            assert!(f.face_of(u, v).is_some());
            assert!(f.face_of(v, u).is_some());
        }
    }

    #[test]
    fn bad_rotation_is_rejected() {
        let g = Graph::cycle(3);
        let r = EmbeddedGraph::new(g, vec![vec![1], vec![2, 0], vec![0, 1]]);
        assert!(matches!(r, Err(Error::Rotation { vertex: 0, .. })));
    }

    #[test]
    fn toroidal_rotation_fails_euler() {
        // K5 has no spherical rotation, so any choice must fail
        let g = Graph::complete(5);
        let rot = (0..5).map(|v| g.neighbor_vec(v)).collect();
        let e = EmbeddedGraph::new(g, rot).unwrap();
        assert!(e.faces().is_err());
    }
}
