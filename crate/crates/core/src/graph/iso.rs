use std::collections::BTreeMap;

use super::Graph;

/// Whether `map` (vertex of `g` ↦ vertex of `h`) is an isomorphism.
pub fn is_isomorphism(g: &Graph, h: &Graph, map: &[usize]) -> bool {
    let n = g.n();
    if h.n() != n || map.len() != n || g.edge_count() != h.edge_count() {
        return false;
    }
    let mut hit = vec![false; n];
    for &x in map {
        if x >= n || hit[x] {
            return false;
        }
        hit[x] = true;
    }
    g.edges().into_iter().all(|(u, v)| h.has_edge(map[u], map[v]))
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    find_isomorphism(g, h).is_some()
}

/// An isomorphism `g → h`, found by colour refinement and backtracking.
///
/// ```
/// use legalsys::graph::{find_isomorphism, is_isomorphism, Graph};
/// let a = Graph::cycle(6);
/// let b = Graph::from_edges(6, [(0, 3), (3, 1), (1, 4), (4, 2), (2, 5), (5, 0)]).unwrap();
/// let map = find_isomorphism(&a, &b).unwrap();
/// assert!(is_isomorphism(&a, &b, &map));
/// assert!(find_isomorphism(&a, &Graph::path(6)).is_none());
/// ```
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    if h.n() != n || g.edge_count() != h.edge_count() {
        return None;
    }
    let (cg, ch) = refine(g, h);
    let classes = cg.iter().chain(&ch).max().map_or(0, |m| m + 1);
    let mut count = vec![0i64; classes];
    for &c in &cg {
        count[c] += 1;
    }
    for &c in &ch {
        count[c] -= 1;
    }
    if count.iter().any(|&c| c != 0) {
        return None;
    }

    let order = search_order(g, &cg);
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(g, h, &cg, &ch, &order, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

/// Stable colouring of the disjoint union, returned per side.
fn refine(g: &Graph, h: &Graph) -> (Vec<usize>, Vec<usize>) {
    let mut cg: Vec<usize> = g.degrees();
    let mut ch: Vec<usize> = h.degrees();
    let mut classes = 0;
    loop {
        let sig = |gr: &Graph, col: &[usize], v: usize| {
            let mut nb: Vec<usize> = gr.neighbor_iter(v).map(|u| col[u]).collect();
            nb.sort_unstable();
            (col[v], nb)
        };
        let sg: Vec<_> = (0..g.n()).map(|v| sig(g, &cg, v)).collect();
        let sh: Vec<_> = (0..h.n()).map(|v| sig(h, &ch, v)).collect();
        let mut ids = BTreeMap::new();
        for s in sg.iter().chain(&sh) {
            ids.entry(s.clone()).or_insert(0usize);
        }
        for (i, v) in ids.values_mut().enumerate() {
            *v = i;
        }
        cg = sg.iter().map(|s| ids[s]).collect();
        ch = sh.iter().map(|s| ids[s]).collect();
        if ids.len() == classes {
            return (cg, ch);
        }
        classes = ids.len();
    }
}

/// Vertices of `g` in the order they get mapped: rarest colour first,
/// then always the vertex with most already-placed neighbours.
fn search_order(g: &Graph, col: &[usize]) -> Vec<usize> {
    let n = g.n();
    let mut freq = BTreeMap::new();
    for &c in col {
        *freq.entry(c).or_insert(0usize) += 1;
    }
    let mut placed = vec![false; n];
    let mut links = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let v = (0..n)
            .filter(|&v| !placed[v])
            .max_by(|&a, &b| {
                links[a]
                    .cmp(&links[b])
                    .then(freq[&col[b]].cmp(&freq[&col[a]]))
                    .then(b.cmp(&a))
            })
            .unwrap();
        placed[v] = true;
        order.push(v);
        for u in g.neighbor_iter(v) {
            links[u] += 1;
        }
    }
    order
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &Graph,
    h: &Graph,
    cg: &[usize],
    ch: &[usize],
    order: &[usize],
    depth: usize,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    for c in 0..h.n() {
        if used[c] || ch[c] != cg[v] {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&x| g.has_edge(v, x) == h.has_edge(c, map[x]));
        if !consistent {
            continue;
        }
        map[v] = c;
        used[c] = true;
        if extend(g, h, cg, ch, order, depth + 1, map, used) {
            return true;
        }
        used[c] = false;
        map[v] = usize::MAX;
    }
    false
}
