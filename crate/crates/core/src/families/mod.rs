//! Named graphs, each with its move system and start state when one is known.

mod blowup;
mod plane;
mod polytopes;

pub use blowup::{blowup_cube, blowup_graph, default_offsets};
pub use plane::{house, triangular_prism, tutte};
pub use polytopes::{
    antiprism, bipartite_cone, brinkmann, cell24, cell600, dual_lobell, hypercube, icosahedron,
    icosahedron_color_pairs,
};

use crate::bits::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::legal::{validate_system, MoveSystem};
use crate::planar::{trace_faces, EmbeddedGraph};

/// A named graph, optionally embedded, optionally with a witness system.
#[derive(Clone, Debug)]
pub struct FamilyBundle {
    pub name: String,
    pub graph: Graph,
    pub embedding: Option<EmbeddedGraph>,
    pub witness: Option<(MoveSystem, VertexSet)>,
    pub note: String,
}

impl FamilyBundle {
    fn new(name: impl Into<String>, graph: Graph, note: impl Into<String>) -> Self {
        FamilyBundle {
            name: name.into(),
            graph,
            embedding: None,
            witness: None,
            note: note.into(),
        }
    }

    fn with_witness(mut self, system: MoveSystem, state: VertexSet) -> Self {
        self.witness = Some((system, state));
        self
    }

    fn with_embedding(mut self, e: EmbeddedGraph) -> Self {
        self.embedding = Some(e);
        self
    }

    /// Checks the witness moves against the graph and the embedding against Euler's formula.
    pub fn validate(&self) -> Result<()> {
        if let Some((m, s)) = &self.witness {
            if let Err(v) = validate_system(&self.graph, m) {
                return Err(Error::invalid(format!("{}: bad move system: {:?}", self.name, v)));
            }
            if s.width() != self.graph.n() {
                return Err(Error::WidthMismatch {
                    expected: self.graph.n(),
                    got: s.width(),
                });
            }
        }
        if let Some(e) = &self.embedding {
            if e.graph() != &self.graph {
                return Err(Error::invalid(format!("{}: embedding is of another graph", self.name)));
            }
            trace_faces(e)?;
        }
        Ok(())
    }
}

fn labels_1_to(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

/// The four-vertex example: a 4-cycle 1-2-3-4 with chord 1-3, moves
/// {2,4}, {1}, {3}, start {4}.
pub fn example_2_3() -> FamilyBundle {
    let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
        .expect("static edges")
        .with_labels(labels_1_to(4));
    FamilyBundle::new("example-2-3", g, "4-cycle with a chord, partitioned into three classes")
        .with_witness(MoveSystem::from_coloring(&[0, 1, 2, 1]), VertexSet::from_iter(4, [3]))
}

/// Wagner graph on 1..8: the 8-cycle with the four long diagonals.
pub fn wagner() -> FamilyBundle {
    let mut edges: Vec<(usize, usize)> = (0..8).map(|i| (i, (i + 1) % 8)).collect();
    edges.extend((0..4).map(|i| (i, i + 4)));
    let g = Graph::from_edges(8, edges).expect("static edges").with_labels(labels_1_to(8));
    let set = |xs: &[usize]| VertexSet::from_iter(8, xs.iter().map(|x| x - 1));
    let (a, b, c, d) = (set(&[1, 4, 6, 7]), set(&[2, 3, 5, 8]), set(&[2, 4, 5, 7]), set(&[1, 3, 6, 8]));
    // moves indexed by vertex 1..8
    let moves = vec![a.clone(), c.clone(), d.clone(), a, b.clone(), d, c, b];
    let system = MoveSystem::new(moves).expect("eight moves");
    FamilyBundle::new("wagner", g, "Wagner graph; moves are shared by vertex pairs, not a colouring")
        .with_witness(system, set(&[1, 2, 4, 8]))
}

/// Vertex sets A₁, A₂, B₁, B₂ of [`tbws_figure`].
pub const TBWS_SIDES: [[usize; 3]; 4] = [[0, 1, 2], [3, 4, 5], [6, 7, 8], [9, 10, 11]];

/// Bipartite graph on a1..a6, b1..b6 that satisfies the two-sided
/// connectivity criterion with A₁ = a1..a3, A₂ = a4..a6, B₁ = b1..b3, B₂ = b4..b6.
pub fn tbws_figure() -> FamilyBundle {
    let a = |i: usize| i - 1;
    let b = |i: usize| i + 5;
    let path = [
        a(1), b(5), a(2), b(6), a(3), b(4), a(4), b(5), a(5), b(6), a(6), b(3), a(5), b(2), a(4), b(1),
    ];
    let mut edges = vec![(a(1), b(1)), (b(1), a(2)), (a(2), b(2)), (b(2), a(3)), (a(2), b(3))];
    edges.extend(path.windows(2).map(|w| (w[0], w[1])));
    let mut g = Graph::new(12);
    for (u, v) in edges {
        if !g.has_edge(u, v) {
            g.add_edge(u, v).expect("in range");
        }
    }
    let mut labels: Vec<String> = (1..=6).map(|i| format!("a{i}")).collect();
    labels.extend((1..=6).map(|i| format!("b{i}")));
    let g = g.with_labels(labels);
    let side = |k: usize| VertexSet::from_iter(12, TBWS_SIDES[k]);
    let system = MoveSystem::colored(12, &[side(0).or(&side(1)), side(2).or(&side(3))]).expect("partition");
    FamilyBundle::new("tbws", g, "dense bipartite graph with the side system {A, B}")
        .with_witness(system, side(0).or(&side(2)))
}

/// Names accepted by [`by_name`].
pub const NAMES: &[&str] = &[
    "example-2-3",
    "hypercube",
    "wagner",
    "tbws",
    "icosahedron",
    "cell24",
    "cell600",
    "brinkmann",
    "dual-lobell",
    "antiprism",
    "bipartite-cone",
    "tutte",
    "house",
    "triangular-prism",
    "blowup-cube",
];

/// Builds a family from its name and integer parameters such as `d`, `n`, `m`, `k`.
pub fn by_name(name: &str, param: &dyn Fn(&str) -> Option<usize>) -> Result<FamilyBundle> {
    let need = |k: &str| param(k).ok_or_else(|| Error::invalid(format!("{name} needs the parameter {k}")));
    match name {
        "example-2-3" => Ok(example_2_3()),
        "hypercube" => hypercube(need("d")?),
        "wagner" => Ok(wagner()),
        "tbws" => Ok(tbws_figure()),
        "icosahedron" => Ok(icosahedron()),
        "cell24" => Ok(cell24()),
        "cell600" => Ok(cell600()),
        "brinkmann" => Ok(brinkmann()),
        "dual-lobell" => dual_lobell(need("n")?),
        "antiprism" => antiprism(need("n")?),
        "bipartite-cone" => bipartite_cone(need("m")?, need("k")?),
        "tutte" => Ok(tutte()),
        "house" => Ok(house()),
        "triangular-prism" => Ok(triangular_prism()),
        "blowup-cube" => blowup_cube(need("d")?, need("n")?, None),
        _ => Err(Error::invalid(format!("unknown family {name}; known: {}", NAMES.join(", ")))),
    }
}
