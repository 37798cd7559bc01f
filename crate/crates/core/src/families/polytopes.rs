use std::f64::consts::TAU;

use super::{labels_1_to, FamilyBundle};
use crate::bits::VertexSet;
use crate::error::{Error, Result};
use crate::graph::{find_isomorphism, Graph};
use crate::legal::{verify_legal_orbit, MoveSystem};
use crate::planar::{trace_faces, EmbeddedGraph};

fn cube_graph(d: usize) -> Graph {
    let n = 1usize << d;
    let mut g = Graph::new(n);
    for x in 0..n {
        for j in 0..d {
            if x & 1 << j == 0 {
                g.add_edge(x, x | 1 << j).expect("in range");
            }
        }
    }
    let labels = (0..n).map(|x| (0..d).map(|j| if x >> j & 1 == 1 { '1' } else { '0' }).collect::<String>());
    g.with_labels(labels)
}

/// Zig-zag start state of the d-cube as vertex integers (bit j = coordinate j).
pub(crate) fn cube_start(d: usize) -> Vec<usize> {
    match d {
        1 => vec![0],
        2 => vec![0, 1],
        3 => vec![0, 2, 3, 7],
        _ => {
            let prev = cube_start(d - 1);
            let (p, q) = (d - 3, d - 2);
            let swap = |x: usize| {
                let (bp, bq) = (x >> p & 1, x >> q & 1);
                (x & !(1 << p) & !(1 << q)) | bq << p | bp << q
            };
            let mut out = prev.clone();
            out.extend(prev.iter().map(|&x| swap(x) | 1 << (d - 1)));
            out
        }
    }
}

fn parity_classes(d: usize) -> [VertexSet; 2] {
    let n = 1usize << d;
    let even = VertexSet::from_iter(n, (0..n).filter(|x| x.count_ones() % 2 == 0));
    let odd = even.complement();
    [even, odd]
}

/// The d-cube with the bipartition system. Labels are coordinate strings,
/// coordinate 0 first.
///
/// ```
/// use legalsys::{families::hypercube, legal::verify_legal_orbit};
/// let b = hypercube(3).unwrap();
/// let (m, s) = b.witness.unwrap();
/// assert_eq!(verify_legal_orbit(&b.graph, &m, &s).unwrap().orbit_size, 4);
/// ```
pub fn hypercube(d: usize) -> Result<FamilyBundle> {
    if d == 0 {
        return Err(Error::invalid("hypercube needs d ≥ 1"));
    }
    if d > 20 {
        return Err(Error::Refused {
            what: format!("hypercube of dimension {d}"),
            limit: 20,
        });
    }
    let g = cube_graph(d);
    let n = g.n();
    let system = MoveSystem::colored(n, &parity_classes(d)).expect("partition");
    let start = VertexSet::from_iter(n, cube_start(d));
    let mut b = FamilyBundle::new(
        format!("hypercube-{d}"),
        g.clone(),
        "d-cube with its bipartition; the start doubles the 3-cube zig-zag one dimension at a time",
    )
    .with_witness(system, start);
    if d == 3 {
        // outer square z = 0, inner square z = 1
        let coords: Vec<(f64, f64)> = (0..8)
            .map(|v| {
                let s = if v & 4 == 0 { 2.0 } else { 1.0 };
                (s * (2.0 * (v & 1) as f64 - 1.0), s * (2.0 * (v >> 1 & 1) as f64 - 1.0))
            })
            .collect();
        b = b.with_embedding(EmbeddedGraph::from_straight_line(g, &coords)?);
    } else if d == 2 {
        b = b.with_embedding(EmbeddedGraph::from_straight_line(
            g,
            &[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0)],
        )?);
    }
    Ok(b)
}

/// Polar point: angle in degrees, radius.
fn polar(deg: f64, r: f64) -> (f64, f64) {
    let t = deg.to_radians();
    (r * t.cos(), r * t.sin())
}

const ICOSA_POINTS: [(f64, f64); 12] = [
    (90.0, 0.5),
    (210.0, 0.5),
    (330.0, 0.5),
    (30.0, 1.0),
    (150.0, 1.0),
    (270.0, 1.0),
    (90.0, 1.5),
    (210.0, 1.5),
    (330.0, 1.5),
    (30.0, 2.0),
    (150.0, 2.0),
    (270.0, 2.0),
];

const ICOSA_EDGES: [(usize, usize); 30] = [
    (0, 1), (1, 2), (2, 0),
    (3, 0), (0, 4), (4, 1), (1, 5), (5, 2), (2, 3),
    (6, 3), (3, 8), (8, 5), (5, 7), (7, 4), (4, 6), (6, 0),
    (8, 2), (7, 1),
    (9, 6), (6, 10), (10, 7), (7, 11), (11, 8), (8, 9), (9, 3),
    (10, 4), (11, 5),
    (9, 10), (10, 11), (11, 9),
];

/// The six colour pairs of the icosahedron drawing; each pair is at distance 2.
pub fn icosahedron_color_pairs() -> [[usize; 2]; 6] {
    [[0, 5], [2, 9], [1, 10], [3, 4], [7, 8], [11, 6]]
}

fn icosahedron_graph() -> Graph {
    let labels = ICOSA_POINTS.iter().map(|&(a, r)| format!("{a}:{r}"));
    Graph::from_edges(12, ICOSA_EDGES).expect("static edges").with_labels(labels)
}

/// Every vertex misses exactly one colour among its neighbours; its move is
/// its own pair together with the missing pair.
fn icosahedron_moves(g: &Graph) -> MoveSystem {
    let pairs = icosahedron_color_pairs();
    let mut color = [0; 12];
    for (c, p) in pairs.iter().enumerate() {
        color[p[0]] = c;
        color[p[1]] = c;
    }
    let moves = (0..12)
        .map(|v| {
            let seen: Vec<usize> = g.neighbor_iter(v).map(|u| color[u]).collect();
            let absent: Vec<usize> = (0..6).filter(|c| *c != color[v] && !seen.contains(c)).collect();
            assert_eq!(absent.len(), 1, "exactly one colour is absent around {v}");
            let mut m = VertexSet::from_iter(12, pairs[color[v]]);
            for u in pairs[absent[0]] {
                m.insert(u);
            }
            m
        })
        .collect();
    MoveSystem::new(moves).expect("twelve moves")
}

/// One-per-colour state: bit `i` of `choice` picks the second vertex of pair `i`.
pub(crate) fn icosahedron_transversal(choice: u32) -> VertexSet {
    let pairs = icosahedron_color_pairs();
    VertexSet::from_iter(12, (0..6).map(|i| pairs[i][(choice >> i & 1) as usize]))
}

/// Icosahedron with the colour-pair moves; the start is the first
/// one-per-colour state whose orbit is legal.
pub fn icosahedron() -> FamilyBundle {
    let g = icosahedron_graph();
    let system = icosahedron_moves(&g);
    let start = (0..64)
        .map(icosahedron_transversal)
        .find(|s| verify_legal_orbit(&g, &system, s).map(|r| r.is_legal()).unwrap_or(false))
        .expect("a legal one-per-colour orbit exists");
    // outer triangle pushed out so that its sides are straight
    let coords: Vec<(f64, f64)> = ICOSA_POINTS
        .iter()
        .map(|&(a, r)| polar(a, if r == 2.0 { 4.0 } else { r }))
        .collect();
    let e = EmbeddedGraph::from_straight_line(g.clone(), &coords).expect("plane drawing");
    FamilyBundle::new("icosahedron", g, "icosahedron with a six-colouring by pairs at distance 2")
        .with_witness(system, start)
        .with_embedding(e)
}

/// 1-skeleton of the 24-cell: the 4-cube with a cone vertex over each
/// 3-face. Classes: the two cube parity classes and the cone vertices.
pub fn cell24() -> FamilyBundle {
    let cube = cube_graph(4);
    let mut g = Graph::new(24);
    for (u, v) in cube.edges() {
        g.add_edge(u, v).expect("in range");
    }
    let mut labels: Vec<String> = (0..16).map(|v| cube.label(v)).collect();
    for j in 0..4 {
        for bit in 0..2 {
            let c = 16 + 2 * j + bit;
            for x in (0..16).filter(|x| x >> j & 1 == bit) {
                g.add_edge(c, x).expect("in range");
            }
            labels.push(format!("x{j}={bit}"));
        }
    }
    let g = g.with_labels(labels);
    let [even, odd] = parity_classes(4);
    let classes = [even.resized(24), odd.resized(24), VertexSet::from_iter(24, 16..24)];
    let system = MoveSystem::colored(24, &classes).expect("partition");
    let start = VertexSet::from_iter(24, cube_start(4));
    FamilyBundle::new("cell24", g, "4-cube coned off over its eight 3-faces; three classes")
        .with_witness(system, start)
}

/// 1-skeleton of the 600-cell on a 10×10 torus grid (vertex `10r + c`,
/// even when `r + c` is even) with ten even hovering vertices `100 + j`
/// over columns j, j+1 and ten odd ones `110 + j` over rows j, j+1.
pub fn cell600() -> FamilyBundle {
    let id = |r: i64, c: i64| (r.rem_euclid(10) * 10 + c.rem_euclid(10)) as usize;
    let mut g = Graph::new(120);
    let add = |g: &mut Graph, u: usize, v: usize| {
        if !g.has_edge(u, v) {
            g.add_edge(u, v).expect("in range");
        }
    };
    for r in 0..10i64 {
        for c in 0..10i64 {
            let v = id(r, c);
            add(&mut g, v, id(r + 1, c));
            add(&mut g, v, id(r, c + 1));
            add(&mut g, v, id(r + 1, c + 1));
            add(&mut g, id(r + 1, c), id(r, c + 1));
            if (r + c) % 2 == 0 {
                add(&mut g, v, id(r + 2, c));
            } else {
                add(&mut g, v, id(r, c + 2));
            }
        }
    }
    for j in 0..10i64 {
        let (he, ho) = (100 + j as usize, 110 + j as usize);
        for t in 0..10i64 {
            for k in [j, j + 1] {
                // even vertices of column k, odd vertices of row k
                if (t + k) % 2 == 0 {
                    add(&mut g, he, id(t, k));
                } else {
                    add(&mut g, ho, id(k, t));
                }
            }
        }
        add(&mut g, he, 100 + ((j + 1) % 10) as usize);
        add(&mut g, ho, 110 + ((j + 1) % 10) as usize);
    }
    let mut labels: Vec<String> = (0..100).map(|v| format!("r{}c{}", v / 10, v % 10)).collect();
    labels.extend((0..10).map(|j| format!("he{j}")));
    labels.extend((0..10).map(|j| format!("ho{j}")));
    let g = g.with_labels(labels);

    // column 0 reads 0..9 downwards; even colours fall by 2 per step
    // southeast, odd colours rise by 2 per step northeast
    let mut color = vec![0usize; 120];
    for r in 0..10i64 {
        for c in 0..10i64 {
            let k = if (r + c) % 2 == 0 { r - 3 * c } else { r + 3 * c };
            color[id(r, c)] = k.rem_euclid(10) as usize;
        }
    }
    for j in 0..10 {
        color[100 + j] = 10 + j % 5;
        color[110 + j] = 15 + j % 5;
    }
    let system = MoveSystem::from_coloring(&color);
    let start = VertexSet::from_iter(
        120,
        (0..100)
            .filter(|v| (v / 10) % 2 == 0)
            .chain((0..10).step_by(2).flat_map(|j| [100 + j, 110 + j])),
    );
    FamilyBundle::new("cell600", g, "600-cell 1-skeleton from a 10x10 torus grid with twenty hovering vertices")
        .with_witness(system, start)
}

/// Brinkmann graph: 4-regular, 21 vertices, girth 5. No bundled system;
/// one is found by the colouring-driven partition search.
pub fn brinkmann() -> FamilyBundle {
    let adj: [&[usize]; 18] = [
        &[2, 5, 7, 13],
        &[3, 6, 7, 8],
        &[4, 8, 9],
        &[5, 9, 10],
        &[6, 10, 11],
        &[11, 12],
        &[12, 13],
        &[15, 20],
        &[14, 16],
        &[15, 17],
        &[16, 18],
        &[17, 19],
        &[18, 20],
        &[14, 19],
        &[17, 18],
        &[18, 19],
        &[19, 20],
        &[20],
    ];
    let edges = adj.iter().enumerate().flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v)));
    let g = Graph::from_edges(21, edges).expect("static edges");
    FamilyBundle::new("brinkmann", g, "Brinkmann graph; the system comes from a search")
}

/// Rotation from positions, with one extra vertex `apex` at infinity
/// adjacent to an outer ring.
fn embed_with_apex(g: &Graph, coords: &[(f64, f64)], apex: usize) -> Result<EmbeddedGraph> {
    let angle = |from: (f64, f64), to: (f64, f64)| (to.1 - from.1).atan2(to.0 - from.0);
    let mut rotation: Vec<Vec<usize>> = (0..g.n())
        .map(|v| {
            if v == apex {
                return Vec::new();
            }
            let p = coords[v];
            let mut nb = g.neighbor_vec(v);
            let key = |u: usize| {
                if u == apex {
                    angle((0.0, 0.0), p)
                } else {
                    angle(p, coords[u])
                }
            };
            nb.sort_by(|&a, &b| key(a).total_cmp(&key(b)));
            nb
        })
        .collect();
    let mut ring = g.neighbor_vec(apex);
    ring.sort_by(|&a, &b| angle((0.0, 0.0), coords[a]).total_cmp(&angle((0.0, 0.0), coords[b])));
    for r in [ring.iter().rev().copied().collect::<Vec<_>>(), ring] {
        rotation[apex] = r;
        let e = EmbeddedGraph::new(g.clone(), rotation.clone())?;
        if trace_faces(&e).is_ok() {
            return Ok(e);
        }
    }
    Err(Error::invalid("no orientation at the apex gives a sphere"))
}

/// Antiprism edges on v_i = off + i − 1, w_i = off + n + i − 1 with
/// w_i adjacent to v_{i−2} and v_{i−1}.
fn antiprism_edges(n: usize, off: usize) -> Vec<(usize, usize)> {
    let v = |i: usize| off + (i + n - 1) % n;
    let w = |i: usize| off + n + (i + n - 1) % n;
    let mut e = Vec::new();
    for i in 1..=n {
        e.push((v(i), v(i + 1)));
        e.push((w(i), w(i + 1)));
        e.push((w(i), v(i + n - 2)));
        e.push((w(i), v(i + n - 1)));
    }
    e
}

fn antiprism_coords(n: usize) -> Vec<(f64, f64)> {
    let step = TAU / n as f64;
    let mut xy: Vec<(f64, f64)> = (0..n).map(|i| (i as f64 * step).cos()).zip((0..n).map(|i| (i as f64 * step).sin())).collect();
    xy.extend((0..n).map(|i| {
        let t = (i as f64 - 1.5) * step;
        (3.0 * t.cos(), 3.0 * t.sin())
    }));
    xy
}

/// The n-antiprism, labelled v1..vn (inner n-gon) and w1..wn.
pub fn antiprism(n: usize) -> Result<FamilyBundle> {
    if n < 3 {
        return Err(Error::invalid("antiprism needs n ≥ 3"));
    }
    let mut labels: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    labels.extend((1..=n).map(|i| format!("w{i}")));
    let g = Graph::from_edges(2 * n, antiprism_edges(n, 0))?.with_labels(labels);
    let e = EmbeddedGraph::from_straight_line(g.clone(), &antiprism_coords(n))?;
    Ok(FamilyBundle::new(format!("antiprism-{n}"), g, "n-antiprism").with_embedding(e))
}

/// Index of the colour merged with c₁: ⌈n/2⌉, moved up by one when that
/// colour touches c₁.
fn lobell_partner(n: usize) -> usize {
    let h = n.div_ceil(2);
    // v₁ ~ w₂, w₃ and w₁ ~ v_{n−1}, v_n
    if h == 2 || h == 3 || h + 1 >= n {
        h + 1
    } else {
        h
    }
}

/// Dual Löbell graph of degree n: the n-antiprism with a cone vertex v*
/// over v1..vn and w* over w1..wn. Ids: v* = 0, w* = 1, then v_i, w_i.
pub fn dual_lobell(n: usize) -> Result<FamilyBundle> {
    if n < 4 {
        return Err(Error::invalid("dual Löbell graph needs n ≥ 4"));
    }
    let total = 2 * n + 2;
    let v = |i: usize| 2 + (i + n - 1) % n;
    let w = |i: usize| 2 + n + (i + n - 1) % n;
    let mut edges = antiprism_edges(n, 2);
    for i in 1..=n {
        edges.push((0, v(i)));
        edges.push((1, w(i)));
    }
    let mut labels = vec!["v*".to_string(), "w*".to_string()];
    labels.extend((1..=n).map(|i| format!("v{i}")));
    labels.extend((1..=n).map(|i| format!("w{i}")));
    let g = Graph::from_edges(total, edges)?.with_labels(labels);
    let mut coords = vec![(0.0, 0.0), (0.0, 0.0)];
    coords.extend(antiprism_coords(n));
    let e = embed_with_apex(&g, &coords, 1)?;
    let mut b = FamilyBundle::new(
        format!("dual-lobell-{n}"),
        g.clone(),
        "n-antiprism with both n-gons coned off; colour pairs {v_i, w_i} and {v*, w*}",
    )
    .with_embedding(e);
    if n == 5 {
        let ico = icosahedron();
        let map = find_isomorphism(&ico.graph, &g).ok_or_else(|| Error::invalid("degree 5 should be the icosahedron"))?;
        let (m, s) = ico.witness.expect("icosahedron has a system");
        let s = VertexSet::from_iter(total, s.iter().map(|x| map[x]));
        b = b.with_witness(m.relabeled(&map), s);
    } else if n >= 6 {
        let h = lobell_partner(n);
        let pair = |i: usize| VertexSet::from_iter(total, [v(i), w(i)]);
        let mut classes = vec![VertexSet::from_iter(total, [0, 1]), pair(1).or(&pair(h))];
        classes.extend((2..=n).filter(|&i| i != h).map(pair));
        let system = MoveSystem::colored(total, &classes)?;
        let start = VertexSet::from_iter(total, [0, w(1)].into_iter().chain((2..=n).map(v)));
        b = b.with_witness(system, start);
    }
    Ok(b)
}

fn k_subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..m {
            if m - x < k - cur.len() {
                break;
            }
            cur.push(x);
            rec(x + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, k, &mut Vec::new(), &mut out);
    out
}

/// Λ(m, k): N_m = {1..m} joined to every k-subset containing it. Subsets
/// follow the points in lexicographic order and are labelled like `c1-2-3`.
/// For 3 < k < m < 2k − 1 the bipartition system is bundled.
pub fn bipartite_cone(m: usize, k: usize) -> Result<FamilyBundle> {
    if k == 0 || k > m {
        return Err(Error::invalid(format!("Λ({m},{k}) needs 1 ≤ k ≤ m")));
    }
    let subsets = k_subsets(m, k);
    if m + subsets.len() > 4096 {
        return Err(Error::Refused {
            what: format!("Λ({m},{k}) with {} vertices", m + subsets.len()),
            limit: 4096,
        });
    }
    let n = m + subsets.len();
    let mut g = Graph::new(n);
    for (i, s) in subsets.iter().enumerate() {
        for &r in s {
            g.add_edge(r, m + i)?;
        }
    }
    let mut labels = labels_1_to(m);
    labels.extend(subsets.iter().map(|s| {
        let parts: Vec<String> = s.iter().map(|r| (r + 1).to_string()).collect();
        format!("c{}", parts.join("-"))
    }));
    let g = g.with_labels(labels);
    let mut b = FamilyBundle::new(format!("lambda-{m}-{k}"), g, "points joined to the k-subsets containing them");
    if 3 < k && k < m && m + 1 < 2 * k {
        let half = m.div_ceil(2);
        let first_containing = |need: &dyn Fn(usize) -> bool| {
            subsets
                .iter()
                .position(|s| (0..m).filter(|&r| need(r)).all(|r| s.contains(&r)))
                .expect("k exceeds both halves")
        };
        let v = first_containing(&|r| r < half);
        let u = first_containing(&|r| r >= half);
        let points = VertexSet::from_iter(n, 0..m);
        let system = MoveSystem::colored(n, &[points.clone(), points.complement()])?;
        let start = VertexSet::from_iter(n, (0..half).chain([m + v, m + u]));
        b = b.with_witness(system, start);
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{are_isomorphic, curvature, girth, is_legal_state, Order};
    use crate::planar::pogorelov_check;
    use num_rational::Ratio;

    fn legal(b: &FamilyBundle) -> bool {
        let (m, s) = b.witness.as_ref().unwrap();
        verify_legal_orbit(&b.graph, m, s).unwrap().is_legal()
    }

    #[test]
    fn cube_counts_and_curvature() {
        let b = hypercube(3).unwrap();
        b.validate().unwrap();
        assert_eq!((b.graph.n(), b.graph.edge_count()), (8, 12));
        assert_eq!(curvature(&b.graph, Order::Finite(2)), Ratio::from_integer(0));
        assert_eq!(girth(&b.graph), Some(4));
        assert_eq!(trace_faces(b.embedding.as_ref().unwrap()).unwrap().len(), 6);
        assert!(legal(&b));
    }

    #[test]
    fn edge_and_square() {
        // both moves of K2 are forced singletons, so no orbit avoids the empty state
        let b = hypercube(1).unwrap();
        assert_eq!(b.graph.edge_count(), 1);
        assert_eq!(b.witness.as_ref().unwrap().1, VertexSet::from_iter(2, [0]));
        assert!(!legal(&b));
        assert!(legal(&hypercube(2).unwrap()));
    }

    /// Vertex lists of every 3-face of the d-cube, corners in local bit order.
    fn three_faces(d: usize) -> Vec<[usize; 8]> {
        let mut out = Vec::new();
        for free in k_subsets(d, 3) {
            let fixed: Vec<usize> = (0..d).filter(|j| !free.contains(j)).collect();
            for base in 0..1usize << fixed.len() {
                let origin: usize = fixed.iter().enumerate().map(|(i, &j)| (base >> i & 1) << j).sum();
                let mut pts = [0; 8];
                for (t, p) in pts.iter_mut().enumerate() {
                    *p = origin | free.iter().enumerate().map(|(i, &j)| (t >> i & 1) << j).sum::<usize>();
                }
                out.push(pts);
            }
        }
        out
    }

    /// 3-cube states (as masks) whose bipartition orbit is legal.
    fn good_cube_masks() -> Vec<bool> {
        let cube = cube_graph(3);
        let sys = MoveSystem::colored(8, &parity_classes(3)).unwrap();
        (0..256u64)
            .map(|m| verify_legal_orbit(&cube, &sys, &VertexSet::from_mask(8, m)).is_ok_and(|r| r.is_legal()))
            .collect()
    }

    #[test]
    fn four_cube_orbit_is_legal_on_every_3_face() {
        let good = good_cube_masks();
        let s = cube_start(4);
        for pts in three_faces(4) {
            let mask = (0..8).filter(|&t| s.contains(&pts[t])).fold(0, |m, t| m | 1 << t);
            assert!(good[mask]);
        }
    }

    #[test]
    fn no_five_cube_state_is_legal_on_every_3_face() {
        let good = good_cube_masks();
        let faces = three_faces(5);
        let mut closing: Vec<Vec<[usize; 8]>> = vec![Vec::new(); 32];
        for f in faces {
            closing[*f.iter().max().unwrap()].push(f);
        }
        fn rec(v: usize, val: &mut [bool; 32], closing: &[Vec<[usize; 8]>], good: &[bool]) -> bool {
            if v == 32 {
                return true;
            }
            for b in [false, true] {
                val[v] = b;
                let ok = closing[v].iter().all(|f| {
                    let mask = (0..8).filter(|&t| val[f[t]]).fold(0, |m, t| m | 1 << t);
                    good[mask]
                });
                if ok && rec(v + 1, val, closing, good) {
                    return true;
                }
            }
            false
        }
        assert!(!rec(0, &mut [false; 32], &closing, &good));
    }

    #[test]
    fn higher_cubes_are_legal() {
        for d in 4..=8 {
            let b = hypercube(d).unwrap();
            b.validate().unwrap();
            assert!(legal(&b), "d = {d}");
        }
    }

    #[test]
    fn four_cube_start_matches_the_drawn_layers() {
        // layer w = 0: {000, 010, 110, 111}; layer w = 1: {000, 001, 101, 111}
        let g = cube_graph(4);
        let mut want: Vec<usize> = ["0000", "0100", "1100", "1110", "0001", "0011", "1011", "1111"]
            .iter()
            .map(|l| g.vertex_by_label(l).unwrap())
            .collect();
        want.sort();
        let mut got = cube_start(4);
        got.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn icosahedron_structure() {
        let b = icosahedron();
        b.validate().unwrap();
        assert!(b.graph.degrees().iter().all(|&d| d == 5));
        assert_eq!(b.graph.edge_count(), 30);
        let (m, _) = b.witness.as_ref().unwrap();
        for v in 0..12 {
            assert_eq!(m.move_at(v).len(), 4);
        }
        assert_eq!(crate::legal::move_span(m).rank(), 5);
        assert!(legal(&b));
        assert_eq!(trace_faces(b.embedding.as_ref().unwrap()).unwrap().len(), 20);
    }

    #[test]
    fn icosahedron_drawn_state_is_legal() {
        let b = icosahedron();
        let s = b.graph.set_of_labels(&["90:0.5", "330:0.5", "30:1", "210:1.5", "210:0.5", "270:2"]);
        let (m, _) = b.witness.as_ref().unwrap();
        assert!(verify_legal_orbit(&b.graph, m, &s).unwrap().is_legal());
    }

    #[test]
    fn cell24_counts() {
        let b = cell24();
        b.validate().unwrap();
        assert_eq!((b.graph.n(), b.graph.edge_count()), (24, 96));
        let extras = VertexSet::from_iter(24, 16..24);
        assert!(b.graph.is_independent(&extras));
        assert!(legal(&b));
    }

    #[test]
    fn cell600_counts_and_links() {
        let b = cell600();
        b.validate().unwrap();
        assert_eq!((b.graph.n(), b.graph.edge_count()), (120, 720));
        assert!(b.graph.degrees().iter().all(|&d| d == 12));
        let ico = icosahedron_graph();
        for v in 0..120 {
            let (link, _) = b.graph.induced_subgraph(&b.graph.neighbors(v));
            assert!(are_isomorphic(&link, &ico), "link of {}", b.graph.label(v));
        }
        let (m, _) = b.witness.as_ref().unwrap();
        assert_eq!(m.distinct().len(), 20);
        for (_, class) in m.distinct().into_iter().filter(|(v, _)| *v < 100) {
            assert_eq!(class.len(), 10);
        }
    }

    #[test]
    fn brinkmann_counts() {
        let b = brinkmann();
        assert_eq!((b.graph.n(), b.graph.edge_count()), (21, 42));
        assert!(b.graph.degrees().iter().all(|&d| d == 4));
        assert_eq!(girth(&b.graph), Some(5));
        assert_eq!(curvature(&b.graph, Order::Finite(2)), Ratio::from_integer(1));
    }

    #[test]
    fn lobell_five_is_the_icosahedron() {
        let b = dual_lobell(5).unwrap();
        b.validate().unwrap();
        assert!(are_isomorphic(&b.graph, &icosahedron().graph));
        assert!(legal(&b));
    }

    #[test]
    fn lobell_systems() {
        for n in 6..=12 {
            let b = dual_lobell(n).unwrap();
            b.validate().unwrap();
            assert_eq!(b.graph.edge_count(), 6 * n);
            assert!(legal(&b), "n = {n}");
            assert!(pogorelov_check(b.embedding.as_ref().unwrap()).unwrap().pass());
        }
        assert!(dual_lobell(4).unwrap().witness.is_none());
    }

    #[test]
    fn antiprism_counts() {
        for n in 3..=9 {
            let b = antiprism(n).unwrap();
            b.validate().unwrap();
            assert_eq!((b.graph.n(), b.graph.edge_count()), (2 * n, 4 * n));
            assert_eq!(trace_faces(b.embedding.as_ref().unwrap()).unwrap().len(), 2 * n + 2);
        }
    }

    #[test]
    fn lambda_cases() {
        let b = bipartite_cone(5, 3).unwrap();
        assert_eq!((b.graph.n(), b.graph.edge_count()), (15, 30));
        assert!(b.witness.is_none());
        let b = bipartite_cone(6, 5).unwrap();
        b.validate().unwrap();
        assert!(legal(&b));
        let (_, s) = b.witness.as_ref().unwrap();
        assert!(is_legal_state(&b.graph, s));
        assert!(are_isomorphic(&bipartite_cone(4, 3).unwrap().graph, &cube_graph(3)));
    }
}
