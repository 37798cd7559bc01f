use std::collections::HashMap;

use super::FamilyBundle;
use crate::graph::Graph;
use crate::planar::EmbeddedGraph;

/// Vertices keyed by polar position (degrees, tenths of a unit), created on first use.
struct PolarBuilder {
    ids: HashMap<(i64, i64), usize>,
    coords: Vec<(f64, f64)>,
    labels: Vec<String>,
    edges: Vec<(usize, usize)>,
}

impl PolarBuilder {
    fn new() -> Self {
        PolarBuilder {
            ids: HashMap::new(),
            coords: Vec::new(),
            labels: Vec::new(),
            edges: Vec::new(),
        }
    }

    fn at(&mut self, deg: i64, tenths: i64) -> usize {
        let key = if tenths == 0 { (0, 0) } else { (deg.rem_euclid(360), tenths) };
        if let Some(&v) = self.ids.get(&key) {
            return v;
        }
        let v = self.coords.len();
        let t = (key.0 as f64).to_radians();
        let r = key.1 as f64 / 10.0;
        self.coords.push((r * t.cos(), r * t.sin()));
        self.labels.push(format!("{}:{}", key.0, r));
        self.ids.insert(key, v);
        v
    }

    fn chain(&mut self, pts: &[(i64, i64)]) {
        for w in pts.windows(2) {
            let (a, b) = (self.at(w[0].0, w[0].1), self.at(w[1].0, w[1].1));
            self.edges.push((a, b));
        }
    }

    fn finish(self) -> EmbeddedGraph {
        let g = Graph::from_edges(self.coords.len(), self.edges)
            .expect("distinct edges")
            .with_labels(self.labels);
        EmbeddedGraph::from_straight_line(g, &self.coords).expect("plane drawing")
    }
}

/// Tutte's graph: three copies of a 15-vertex fragment around a hub, drawn
/// with straight lines. Labels are polar positions `deg:radius`.
pub fn tutte() -> FamilyBundle {
    let mut p = PolarBuilder::new();
    p.at(0, 0);
    for x in [30, 150, 270] {
        p.chain(&[(0, 0), (x, 10)]);
        p.chain(&[
            (x - 20, 13),
            (x, 10),
            (x + 20, 13),
            (x, 14),
            (x - 20, 13),
            (x - 25, 17),
            (x - 10, 19),
            (x, 17),
            (x + 10, 20),
            (x + 25, 21),
            (x + 20, 13),
        ]);
        p.chain(&[(x, 17), (x, 14)]);
        p.chain(&[(x - 25, 17), (x - 25, 22), (x - 10, 23), (x - 10, 19)]);
        p.chain(&[(x - 25, 22), (x - 20, 29)]);
        p.chain(&[(x + 25, 21), (x + 20, 29), (x, 30), (x - 20, 29)]);
        p.chain(&[(x - 10, 23), (x, 24), (x, 30)]);
        p.chain(&[(x, 24), (x + 10, 20)]);
        p.chain(&[(x + 20, 29), (x + 100, 29)]);
    }
    let e = p.finish();
    FamilyBundle::new("tutte", e.graph().clone(), "Tutte's graph: planar, cubic, 3-connected, not Hamiltonian")
        .with_embedding(e)
}

/// A square with a triangular roof: square 0 (0,0), 1 (2,0), 2 (2,2),
/// 3 (0,2) and apex 4 above the edge 2–3.
pub fn house() -> FamilyBundle {
    let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0), (2, 4), (3, 4)]).expect("static edges");
    let e = EmbeddedGraph::from_straight_line(g.clone(), &[(0.0, 0.0), (2.0, 0.0), (2.0, 2.0), (0.0, 2.0), (1.0, 3.41)])
        .expect("plane drawing");
    FamilyBundle::new("house", g, "square with a triangle on top").with_embedding(e)
}

/// Triangle 0-1-2 outside, triangle 3-4-5 inside, `i` joined to `i + 3`.
pub fn triangular_prism() -> FamilyBundle {
    let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)])
        .expect("static edges");
    let xy = [(0.0, 0.0), (4.0, 0.0), (2.0, 4.0), (1.5, 1.0), (2.5, 1.0), (2.0, 2.0)];
    let e = EmbeddedGraph::from_straight_line(g.clone(), &xy).expect("plane drawing");
    FamilyBundle::new("triangular-prism", g, "triangular prism").with_embedding(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{find_hamiltonian_cycle, girth, is_strongly_legal_state};
    use crate::planar::{state_to_hamilton, trace_faces, vf_graph};
    use crate::VertexSet;

    #[test]
    fn tutte_counts() {
        let b = tutte();
        b.validate().unwrap();
        let g = &b.graph;
        assert_eq!((g.n(), g.edge_count()), (46, 69));
        assert!(g.degrees().iter().all(|&d| d == 3));
        assert!(g.is_three_connected());
        assert_eq!(girth(g), Some(4));
        assert_eq!(trace_faces(b.embedding.as_ref().unwrap()).unwrap().len(), 25);
    }

    #[test]
    fn house_and_prism() {
        let h = house();
        h.validate().unwrap();
        assert_eq!((h.graph.n(), h.graph.edge_count()), (5, 6));
        assert_eq!(trace_faces(h.embedding.as_ref().unwrap()).unwrap().len(), 3);
        let p = triangular_prism();
        p.validate().unwrap();
        assert!(find_hamiltonian_cycle(&p.graph).unwrap().is_some());
    }

    #[test]
    fn drawn_house_state() {
        // square face, triangle face and the vertices (0,0), (0,2), (2,2)
        let h = house();
        let e = h.embedding.unwrap();
        let vf = vf_graph(&e).unwrap();
        let faces = &vf.faces;
        let square = (0..faces.len()).find(|&f| faces.cycles[f].len() == 4).unwrap();
        let triangle = (0..faces.len()).find(|&f| faces.cycles[f].len() == 3).unwrap();
        let s = VertexSet::from_iter(vf.graph().n(), [vf.face_id(square), vf.face_id(triangle), 0, 3, 2]);
        assert!(is_strongly_legal_state(vf.graph(), &s));
        let c = state_to_hamilton(&e, &s).unwrap();
        assert_eq!(c.len(), 5);
    }
}
