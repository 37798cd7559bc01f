use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::{trace_faces, EmbeddedGraph, Faces};
use crate::bits::VertexSet;
use crate::error::{Error, Result};
use crate::graph::{are_isomorphic, Graph};
use crate::legal::MoveSystem;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition {
    pub name: String,
    pub pass: bool,
    /// Offending vertices when the condition fails.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Vec<usize>>,
}

impl Condition {
    fn new(name: &str, witness: Option<Vec<usize>>) -> Self {
        Condition {
            name: name.to_string(),
            pass: witness.is_none(),
            witness,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReflectionVerdict {
    pub conditions: Vec<Condition>,
}

impl ReflectionVerdict {
    pub fn pass(&self) -> bool {
        self.conditions.iter().all(|c| c.pass)
    }

    pub fn condition(&self, name: &str) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.name == name)
    }
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

struct FaceIndex {
    triangles: HashSet<Vec<usize>>,
    quads: HashSet<Vec<usize>>,
}

fn face_index(g: &Graph, faces: &Faces) -> FaceIndex {
    let mut triangles = HashSet::new();
    let mut quads = HashSet::new();
    for c in &faces.cycles {
        let s = sorted(c.clone());
        let distinct = s.windows(2).all(|w| w[0] != w[1]);
        if c.len() == 3 && distinct {
            triangles.insert(s);
        } else if c.len() == 4 && distinct && !g.has_edge(c[0], c[2]) && !g.has_edge(c[1], c[3]) {
            quads.insert(s);
        }
    }
    FaceIndex { triangles, quads }
}

fn triangles(g: &Graph) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for (a, b) in g.edges() {
        for c in g.neighbor_iter(a) {
            if c > b && g.has_edge(b, c) {
                out.push([a, b, c]);
            }
        }
    }
    out
}

/// Every 4-cycle `a b c d` once, with `a` least and `b < d`.
fn four_cycles(g: &Graph) -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..g.n() {
        for c in a + 1..g.n() {
            let common: Vec<usize> = g
                .neighbors(a)
                .and(&g.neighbors(c))
                .iter()
                .filter(|&x| x > a)
                .collect();
            for (i, &b) in common.iter().enumerate() {
                for &d in &common[i + 1..] {
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out
}

/// Whether the 4-cycle is the union of two triangular faces along a diagonal.
fn two_triangles(g: &Graph, idx: &FaceIndex, q: [usize; 4]) -> bool {
    let [a, b, c, d] = q;
    let tri = |x: usize, y: usize, z: usize| idx.triangles.contains(&sorted(vec![x, y, z]));
    (g.has_edge(a, c) && tri(a, b, c) && tri(a, c, d)) || (g.has_edge(b, d) && tri(a, b, d) && tri(b, c, d))
}

fn first_bad_triangle(g: &Graph, idx: &FaceIndex) -> Option<Vec<usize>> {
    triangles(g)
        .into_iter()
        .find(|t| !idx.triangles.contains(t.as_slice()))
        .map(|t| t.to_vec())
}

/// Conditions for a finite-volume right-angled reflection group with all
/// regions triangles.
pub fn pogorelov_check(e: &EmbeddedGraph) -> Result<ReflectionVerdict> {
    let g = e.graph();
    let faces = trace_faces(e)?;
    let idx = face_index(g, &faces);
    let bad_region = faces.cycles.iter().find(|c| c.len() != 3 || !idx.triangles.contains(&sorted(c.to_vec())));
    let bad_short = first_bad_triangle(g, &idx).or_else(|| {
        four_cycles(g)
            .into_iter()
            .find(|&q| !two_triangles(g, &idx, q))
            .map(|q| q.to_vec())
    });
    let n = g.n();
    let excluded = (n == 3 || n == 4) && g.is_clique(&g.vertices());
    Ok(ReflectionVerdict {
        conditions: vec![
            Condition::new("regions are triangles", bad_region.cloned()),
            Condition::new("short cycles bound triangles", bad_short),
            Condition::new("not a triangle or 4-clique", excluded.then(|| (0..n).collect())),
        ],
    })
}

/// Conditions for a cusped right-angled reflection group: triangles and quads.
///
/// ```
/// use legalsys::{graph::Graph, planar::{cusped_check, EmbeddedGraph}};
/// // triangular prism
/// let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]).unwrap();
/// let xy = [(0.0, 0.0), (4.0, 0.0), (2.0, 3.0), (1.5, 1.0), (2.5, 1.0), (2.0, 1.8)];
/// let e = EmbeddedGraph::from_straight_line(g, &xy).unwrap();
/// assert!(cusped_check(&e).unwrap().pass());
/// ```
pub fn cusped_check(e: &EmbeddedGraph) -> Result<ReflectionVerdict> {
    let g = e.graph();
    let faces = trace_faces(e)?;
    let idx = face_index(g, &faces);
    let bad_region = faces
        .cycles
        .iter()
        .find(|c| {
            let s = sorted(c.to_vec());
            !idx.triangles.contains(&s) && !idx.quads.contains(&s)
        })
        .cloned();

    let quad_faces: Vec<&Vec<usize>> = faces.cycles.iter().filter(|c| idx.quads.contains(&sorted(c.to_vec()))).collect();
    let on_boundary = |q: &Vec<usize>, x: usize, y: usize| {
        (0..4).any(|i| {
            let (a, b) = (q[i], q[(i + 1) % 4]);
            (a, b) == (x, y) || (a, b) == (y, x)
        })
    };
    let mut bad_meet = None;
    'outer: for (i, p) in quad_faces.iter().enumerate() {
        for q in &quad_faces[i + 1..] {
            let common: Vec<usize> = sorted(p.iter().filter(|x| q.contains(x)).copied().collect());
            let ok = match common.len() {
                0 | 1 => true,
                2 => on_boundary(p, common[0], common[1]) && on_boundary(q, common[0], common[1]),
                _ => false,
            };
            if !ok {
                bad_meet = Some(sorted(p.iter().chain(q.iter()).copied().collect::<HashSet<_>>().into_iter().collect()));
                break 'outer;
            }
        }
    }

    let bad_short = first_bad_triangle(g, &idx).or_else(|| {
        four_cycles(g)
            .into_iter()
            .find(|&q| !idx.quads.contains(&sorted(q.to_vec())) && !two_triangles(g, &idx, q))
            .map(|q| q.to_vec())
    });

    let n = g.n();
    let wheel = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (1, 4), (2, 4), (3, 4)])?;
    let excluded = [Graph::complete(3), Graph::complete(4), Graph::cycle(4), wheel]
        .iter()
        .any(|x| x.n() == n && are_isomorphic(g, x));
    Ok(ReflectionVerdict {
        conditions: vec![
            Condition::new("regions are triangles or quads", bad_region),
            Condition::new("quads meet in nothing, a vertex or an edge", bad_meet),
            Condition::new("short cycles bound a region or two triangles", bad_short),
            Condition::new(
                "not a triangle, 4-clique, 4-cycle or cone on a 4-cycle",
                excluded.then(|| (0..n).collect()),
            ),
        ],
    })
}

/// Looks for a full subgraph B⋆C with B two nonadjacent vertices and C three
/// vertices that do not form a triangle. The witness is `[b1, b2, c1, c2, c3]`,
/// least in lexicographic order.
pub fn relhyp_quads_check(g: &Graph) -> ReflectionVerdict {
    let mut witness = None;
    'outer: for b1 in 0..g.n() {
        for b2 in b1 + 1..g.n() {
            if g.has_edge(b1, b2) {
                continue;
            }
            let common = g.neighbors(b1).and(&g.neighbors(b2)).to_vec();
            if common.len() < 3 {
                continue;
            }
            for i in 0..common.len() {
                for j in i + 1..common.len() {
                    for k in j + 1..common.len() {
                        let (x, y, z) = (common[i], common[j], common[k]);
                        if !(g.has_edge(x, y) && g.has_edge(y, z) && g.has_edge(x, z)) {
                            witness = Some(vec![b1, b2, x, y, z]);
                            break 'outer;
                        }
                    }
                }
            }
        }
    }
    ReflectionVerdict {
        conditions: vec![Condition::new("no join of a non-edge with a non-triangle", witness)],
    }
}

#[derive(Clone, Debug)]
pub struct TbwsVerdict {
    pub verdict: ReflectionVerdict,
    /// The system {A, B}.
    pub system: MoveSystem,
    /// A₁ ∪ B₁.
    pub state: VertexSet,
}

impl TbwsVerdict {
    pub fn pass(&self) -> bool {
        self.verdict.pass()
    }
}

/// Checks the two-sided splitting conditions for the system {A, B} of a
/// bipartite graph with A = A₁ ⊔ A₂ and B = B₁ ⊔ B₂.
///
/// For all i, j: A_i lies in one component of the subgraph induced by
/// A_i ⊔ B_j, and each vertex of B_j has a neighbour in A_i.
///
/// ```
/// use legalsys::{graph::Graph, planar::tbws_check, VertexSet};
/// let g = Graph::complete_bipartite(2, 2);
/// let s = |v: usize| VertexSet::from_iter(4, [v]);
/// assert!(tbws_check(&g, &s(0), &s(1), &s(2), &s(3)).unwrap().pass());
/// ```
pub fn tbws_check(
    g: &Graph,
    a1: &VertexSet,
    a2: &VertexSet,
    b1: &VertexSet,
    b2: &VertexSet,
) -> Result<TbwsVerdict> {
    let n = g.n();
    let parts = [a1, a2, b1, b2];
    for p in parts {
        if p.width() != n {
            return Err(Error::WidthMismatch {
                expected: n,
                got: p.width(),
            });
        }
    }
    let mut seen = VertexSet::empty(n);
    for p in parts {
        if seen.intersects(p) {
            return Err(Error::invalid("the four parts overlap"));
        }
        seen.or_with(p);
    }
    if !seen.is_full() {
        return Err(Error::invalid("the four parts do not cover the vertices"));
    }
    let a = a1.or(a2);
    let b = b1.or(b2);
    if !g.is_independent(&a) || !g.is_independent(&b) {
        return Err(Error::invalid("A and B must be the sides of a bipartition"));
    }
    let mut conditions = Vec::new();
    for (i, ai) in [a1, a2].into_iter().enumerate() {
        for (j, bj) in [b1, b2].into_iter().enumerate() {
            let joined = ai.or(bj);
            let (h, map) = g.induced_subgraph(&joined);
            let comps = h.components();
            let path_fail = comps
                .iter()
                .map(|c| c.iter().map(|&x| map[x]).filter(|&v| ai.contains(v)).collect::<Vec<_>>())
                .filter(|c| !c.is_empty())
                .collect::<Vec<_>>();
            let path_witness = (path_fail.len() > 1).then(|| vec![path_fail[0][0], path_fail[1][0]]);
            conditions.push(Condition::new(&format!("A{} connected through B{}", i + 1, j + 1), path_witness));
            let lonely = bj.iter().find(|&v| !g.neighbors(v).intersects(ai));
            conditions.push(Condition::new(
                &format!("B{} dominated by A{}", j + 1, i + 1),
                lonely.map(|v| vec![v]),
            ));
        }
    }
    Ok(TbwsVerdict {
        verdict: ReflectionVerdict { conditions },
        system: MoveSystem::colored(n, &[a, b])?,
        state: a1.or(b1),
    })
}
