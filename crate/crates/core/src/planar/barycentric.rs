use super::{trace_faces, EmbeddedGraph};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// 1-skeleton of the barycentric subdivision of a plane cell structure.
///
/// Ids: vertices `0..n`, then one per edge in lexicographic edge order,
/// then one per face in tracing order.
#[derive(Clone, Debug)]
pub struct Barycentric {
    pub graph: Graph,
    pub theta_order: usize,
    pub edges: Vec<(usize, usize)>,
    pub faces: Vec<Vec<usize>>,
}

impl Barycentric {
    pub fn edge_id(&self, i: usize) -> usize {
        self.theta_order + i
    }

    pub fn face_id(&self, f: usize) -> usize {
        self.theta_order + self.edges.len() + f
    }
}

/// ```
/// use legalsys::{graph::Graph, planar::{barycentric_skeleton, EmbeddedGraph}};
/// let tri = EmbeddedGraph::new(Graph::cycle(3), vec![vec![1, 2], vec![2, 0], vec![0, 1]]).unwrap();
/// assert_eq!(barycentric_skeleton(&tri).unwrap().graph.n(), 8);
/// ```
pub fn barycentric_skeleton(e: &EmbeddedGraph) -> Result<Barycentric> {
    let g = e.graph();
    if !g.is_two_connected() {
        return Err(Error::invalid("cell structure needs a 2-connected graph"));
    }
    let faces = trace_faces(e)?;
    let n = g.n();
    let edges = g.edges();
    let (ne, nf) = (edges.len(), faces.len());
    let mut b = Graph::new(n + ne + nf);
    for (i, &(u, v)) in edges.iter().enumerate() {
        let x = n + i;
        b.add_edge(u, x)?;
        b.add_edge(v, x)?;
        for f in [faces.face_of(u, v), faces.face_of(v, u)] {
            let f = n + ne + f.expect("dart on a face");
            if !b.has_edge(x, f) {
                b.add_edge(x, f)?;
            }
        }
    }
    for (f, cyc) in faces.cycles.iter().enumerate() {
        for &v in cyc {
            if !b.has_edge(v, n + ne + f) {
                b.add_edge(v, n + ne + f)?;
            }
        }
    }
    let mut labels: Vec<String> = (0..n).map(|v| g.label(v)).collect();
    labels.extend(edges.iter().map(|&(u, v)| format!("e{u}-{v}")));
    labels.extend((0..nf).map(|f| format!("f{f}")));
    Ok(Barycentric {
        graph: b.with_labels(labels),
        theta_order: n,
        edges,
        faces: faces.cycles,
    })
}
