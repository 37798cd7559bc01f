use num_rational::Ratio;

use super::{trace_faces, EmbeddedGraph, Faces};
use crate::bits::VertexSet;
use crate::error::{Error, Result};
use crate::graph::{curvature, is_hamiltonian_cycle, is_strongly_legal_state, Graph, Order};
use crate::legal::{verify_legal_orbit, MoveSystem};

/// Vertex–face incidence graph of a plane graph Θ.
///
/// Ids `0..n` are the vertices of Θ, ids `n..n + faces` are its faces in
/// tracing order.
#[derive(Clone, Debug)]
pub struct VFGraph {
    pub embedding: EmbeddedGraph,
    /// Number of vertices of Θ.
    pub theta_order: usize,
    /// Faces of Θ.
    pub faces: Faces,
}

impl VFGraph {
    pub fn graph(&self) -> &Graph {
        self.embedding.graph()
    }

    pub fn face_id(&self, f: usize) -> usize {
        self.theta_order + f
    }

    pub fn is_face(&self, x: usize) -> bool {
        x >= self.theta_order
    }

    pub fn vertex_part(&self) -> VertexSet {
        VertexSet::from_iter(self.graph().n(), 0..self.theta_order)
    }

    pub fn face_part(&self) -> VertexSet {
        VertexSet::from_iter(self.graph().n(), self.theta_order..self.graph().n())
    }
}

/// Builds VF(Θ) with its quadrangulated embedding.
///
/// ```
/// use legalsys::{graph::Graph, planar::{vf_graph, EmbeddedGraph}};
/// let tri = EmbeddedGraph::new(Graph::cycle(3), vec![vec![1, 2], vec![2, 0], vec![0, 1]]).unwrap();
/// let vf = vf_graph(&tri).unwrap();
/// assert_eq!((vf.graph().n(), vf.graph().edge_count()), (5, 6));
/// ```
pub fn vf_graph(e: &EmbeddedGraph) -> Result<VFGraph> {
    let g = e.graph();
    if !g.is_two_connected() {
        return Err(Error::invalid("vertex–face graph needs a 2-connected graph"));
    }
    let faces = trace_faces(e)?;
    let n = g.n();
    let total = n + faces.len();
    let mut vf = Graph::new(total);
    for (f, cyc) in faces.cycles.iter().enumerate() {
        for &v in cyc {
            if vf.has_edge(v, n + f) {
                return Err(Error::invalid(format!("face {f} repeats vertex {v}")));
            }
            vf.add_edge(v, n + f)?;
        }
    }
    let mut labels: Vec<String> = (0..n).map(|v| g.label(v)).collect();
    labels.extend((0..faces.len()).map(|f| format!("f{f}")));
    let vf = vf.with_labels(labels);

    let at_vertices: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            e.rotation()[v]
                .iter()
                .map(|&u| n + faces.face_of(v, u).expect("dart on a face"))
                .collect()
        })
        .collect();
    let mut embedding = None;
    for reverse in [false, true] {
        let mut rot = at_vertices.clone();
        for cyc in &faces.cycles {
            let mut r = cyc.clone();
            if reverse {
                r.reverse();
            }
            rot.push(r);
        }
        let cand = EmbeddedGraph::new(vf.clone(), rot)?;
        if let Ok(fs) = trace_faces(&cand) {
            embedding = Some((cand, fs));
            break;
        }
    }
    let (embedding, vf_faces) =
        embedding.ok_or_else(|| Error::invalid("derived embedding is not spherical"))?;
    if vf_faces.cycles.iter().any(|c| c.len() != 4) || vf.edge_count() != 2 * g.edge_count() {
        return Err(Error::invalid("derived embedding is not a quadrangulation"));
    }
    if curvature(&vf, Order::Finite(2)) != Ratio::from_integer(0) {
        return Err(Error::invalid("vertex–face graph has nonzero curvature"));
    }
    Ok(VFGraph {
        embedding,
        theta_order: n,
        faces,
    })
}

/// The two-class system {faces, vertices} on VF(Θ).
pub fn vf_system(vf: &VFGraph) -> MoveSystem {
    MoveSystem::colored(vf.graph().n(), &[vf.face_part(), vf.vertex_part()])
        .expect("the two parts partition the vertices")
}

fn check_subcubic(g: &Graph) -> Result<()> {
    match (0..g.n()).find(|&v| g.degree(v) > 3) {
        Some(v) => Err(Error::invalid(format!("vertex {} has degree {} > 3", g.label(v), g.degree(v)))),
        None => Ok(()),
    }
}

/// Strongly legal VF-state built from a Hamiltonian cycle of Θ.
///
/// Faces on the side of `c[0] → c[1]` form F₁. Chords are directed from the
/// lower to the higher index and V₁ holds their tails together with the
/// vertices of degree 2. The result is checked to be strongly legal with a
/// legal orbit under [`vf_system`].
pub fn hamilton_to_state(e: &EmbeddedGraph, c: &[usize]) -> Result<VertexSet> {
    let g = e.graph();
    check_subcubic(g)?;
    if !is_hamiltonian_cycle(g, c) {
        return Err(Error::invalid("not a Hamiltonian cycle"));
    }
    let vf = vf_graph(e)?;
    let n = g.n();
    let mut on_cycle = Graph::new(n);
    for i in 0..n {
        on_cycle.add_edge(c[i], c[(i + 1) % n])?;
    }
    let faces = &vf.faces;
    let root = faces.face_of(c[0], c[1]).expect("dart on a face");
    let mut inside = vec![false; faces.len()];
    inside[root] = true;
    let mut stack = vec![root];
    while let Some(f) = stack.pop() {
        let cyc = &faces.cycles[f];
        for i in 0..cyc.len() {
            let (u, v) = (cyc[i], cyc[(i + 1) % cyc.len()]);
            if on_cycle.has_edge(u, v) {
                continue;
            }
            let h = faces.face_of(v, u).expect("dart on a face");
            if !inside[h] {
                inside[h] = true;
                stack.push(h);
            }
        }
    }
    let mut state = VertexSet::empty(vf.graph().n());
    for (f, &ins) in inside.iter().enumerate() {
        if ins {
            state.insert(vf.face_id(f));
        }
    }
    for v in 0..n {
        let chord_tail = g.neighbor_iter(v).any(|u| !on_cycle.has_edge(u, v) && u > v);
        if g.degree(v) == 2 || chord_tail {
            state.insert(v);
        }
    }
    if !is_strongly_legal_state(vf.graph(), &state) {
        return Err(Error::invalid(format!("constructed state {state} is not strongly legal")));
    }
    if !verify_legal_orbit(vf.graph(), &vf_system(&vf), &state)?.is_legal() {
        return Err(Error::invalid(format!("orbit of constructed state {state} is not legal")));
    }
    Ok(state)
}

/// Hamiltonian cycle of Θ read off a strongly legal VF-state.
///
/// Takes the edges whose two faces lie on different sides of `s`; the cycle
/// starts at 0 and leaves towards its smaller neighbour.
pub fn state_to_hamilton(e: &EmbeddedGraph, s: &VertexSet) -> Result<Vec<usize>> {
    let g = e.graph();
    check_subcubic(g)?;
    let vf = vf_graph(e)?;
    if s.width() != vf.graph().n() {
        return Err(Error::WidthMismatch {
            expected: vf.graph().n(),
            got: s.width(),
        });
    }
    if !is_strongly_legal_state(vf.graph(), s) {
        return Err(Error::invalid(format!("{s} is not strongly legal")));
    }
    let n = g.n();
    let mut h = Graph::new(n);
    for (u, v) in g.edges() {
        let f1 = vf.face_id(vf.faces.face_of(u, v).expect("dart on a face"));
        let f2 = vf.face_id(vf.faces.face_of(v, u).expect("dart on a face"));
        if s.contains(f1) != s.contains(f2) {
            h.add_edge(u, v)?;
        }
    }
    if (0..n).any(|v| h.degree(v) != 2) || !h.is_connected() {
        return Err(Error::invalid("separating edges do not form a Hamiltonian cycle"));
    }
    let mut cycle = vec![0];
    let mut prev = 0;
    let mut cur = h.neighbor_vec(0)[0];
    while cur != 0 {
        cycle.push(cur);
        let next = h.neighbor_iter(cur).find(|&x| x != prev).expect("degree 2");
        prev = cur;
        cur = next;
    }
    Ok(cycle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::find_hamiltonian_cycle;

    fn cube() -> EmbeddedGraph {
        // outer square 0..3, inner square 4..7
        let g = Graph::from_edges(
            8,
            [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4), (0, 4), (1, 5), (2, 6), (3, 7)],
        )
        .unwrap();
        let xy = [(0.0, 0.0), (3.0, 0.0), (3.0, 3.0), (0.0, 3.0), (1.0, 1.0), (2.0, 1.0), (2.0, 2.0), (1.0, 2.0)];
        EmbeddedGraph::from_straight_line(g, &xy).unwrap()
    }

    fn edge_set(c: &[usize]) -> Vec<(usize, usize)> {
        let mut es: Vec<_> = (0..c.len())
            .map(|i| {
                let (a, b) = (c[i], c[(i + 1) % c.len()]);
                (a.min(b), a.max(b))
            })
            .collect();
        es.sort();
        es
    }

    #[test]
    fn cube_counts() {
        let vf = vf_graph(&cube()).unwrap();
        assert_eq!(vf.graph().n(), 14);
        assert_eq!(vf.graph().edge_count(), 24);
        assert!(crate::graph::bipartition(vf.graph()).is_some());
    }

    #[test]
    fn cube_round_trip() {
        let e = cube();
        let c = find_hamiltonian_cycle(e.graph()).unwrap().unwrap();
        let s = hamilton_to_state(&e, &c).unwrap();
        let back = state_to_hamilton(&e, &s).unwrap();
        assert_eq!(edge_set(&back), edge_set(&c));
    }

    #[test]
    fn mirror_image_gives_same_counts() {
        let vf = vf_graph(&cube().mirrored()).unwrap();
        assert_eq!(vf.graph().edge_count(), 24);
    }

    #[test]
    fn path_is_rejected() {
        let g = Graph::path(3);
        let e = EmbeddedGraph::new(g, vec![vec![1], vec![0, 2], vec![1]]).unwrap();
        assert!(vf_graph(&e).is_err());
    }

    #[test]
    fn not_hamiltonian_input_is_rejected() {
        let e = cube();
        assert!(hamilton_to_state(&e, &[0, 1, 2, 3]).is_err());
    }
}
