//! Simple undirected graphs with bit-row adjacency, and the predicates the
//! rest of the crate is built on.

mod clique;
mod hamilton;
mod iso;
mod matching;

pub use clique::{clique_census, cliques, curvature, CliqueCensus, Order};
pub use hamilton::{
    find_hamiltonian_cycle, hamiltonian_cycle_naive, is_hamiltonian_cycle, HamiltonOutcome,
    HamiltonSearch, DEFAULT_NODE_BUDGET,
};
pub use iso::{are_isomorphic, find_isomorphism, is_isomorphism};
pub use matching::{complement_matching, perfect_antimatching, Antimatching, NoAntimatching};

use crate::bits::{first_bit, words_for, BitIter, VertexSet};
use crate::error::{Error, Result};

/// Finite simple graph on `0..n`.
///
/// Row `v` of the adjacency matrix is stored as `words_for(n)` packed words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    w: usize,
    adj: Vec<u64>,
    labels: Option<Vec<String>>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl Graph {
    pub fn new(n: usize) -> Self {
        let w = words_for(n);
        Graph {
            n,
            w,
            adj: vec![0; n * w],
            labels: None,
        }
    }

    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Result<Self> {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Complete graph K_n.
    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.set_edge(u, v);
            }
        }
        g
    }

    /// Cycle 0-1-…-(n-1)-0, n ≥ 3.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Graph::new(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.set_edge(u, v);
            }
        }
        g
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Words per adjacency row.
    #[inline]
    pub fn row_words(&self) -> usize {
        self.w
    }

    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.w..(v + 1) * self.w]
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet::from_words(self.n, self.row(v).to_vec())
    }

    pub fn neighbor_iter(&self, v: usize) -> BitIter<'_> {
        BitIter::new(self.row(v))
    }

    pub fn neighbor_vec(&self, v: usize) -> Vec<usize> {
        self.neighbor_iter(v).collect()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.row(u)[v / 64] >> (v % 64) & 1 == 1
    }

    fn set_edge(&mut self, u: usize, v: usize) {
        let w = self.w;
        self.adj[u * w + v / 64] |= 1 << (v % 64);
        self.adj[v * w + u / 64] |= 1 << (u % 64);
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        for x in [u, v] {
            if x >= self.n {
                return Err(Error::VertexOutOfRange { vertex: x, n: self.n });
            }
        }
        if u == v {
            return Err(Error::invalid(format!("self-loop at {u}")));
        }
        self.set_edge(u, v);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        if u < self.n && v < self.n {
            let w = self.w;
            self.adj[u * w + v / 64] &= !(1 << (v % 64));
            self.adj[v * w + u / 64] &= !(1 << (u % 64));
        }
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.neighbor_iter(u) {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn set_label(&mut self, v: usize, text: impl Into<String>) {
        let n = self.n;
        let labels = self
            .labels
            .get_or_insert_with(|| (0..n).map(|i| i.to_string()).collect());
        labels[v] = text.into();
    }

    pub fn with_labels<S: Into<String>>(mut self, labels: impl IntoIterator<Item = S>) -> Self {
        let l: Vec<String> = labels.into_iter().map(Into::into).collect();
        assert_eq!(l.len(), self.n, "one label per vertex");
        self.labels = Some(l);
        self
    }

    pub fn clear_labels(&mut self) {
        self.labels = None;
    }

    /// Vertex with the given label.
    pub fn vertex_by_label(&self, label: &str) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }

    /// Set of vertices with the given labels; panics on an unknown label.
    pub fn set_of_labels(&self, labels: &[&str]) -> VertexSet {
        VertexSet::from_iter(
            self.n,
            labels.iter().map(|l| {
                self.vertex_by_label(l)
                    .unwrap_or_else(|| panic!("no vertex labelled {l}"))
            }),
        )
    }

    /// Induced subgraph on `s`; the second value maps new indices to old.
    pub fn induced_subgraph(&self, s: &VertexSet) -> (Graph, Vec<usize>) {
        let keep = s.to_vec();
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            pos[v] = i;
        }
        let mut h = Graph::new(keep.len());
        for (i, &u) in keep.iter().enumerate() {
            for v in self.neighbor_iter(u) {
                let j = pos[v];
                if j != usize::MAX && j > i {
                    h.set_edge(i, j);
                }
            }
        }
        if let Some(l) = &self.labels {
            h.labels = Some(keep.iter().map(|&v| l[v].clone()).collect());
        }
        (h, keep)
    }

    /// The graph with vertex `v` deleted; later vertices shift down by one.
    pub fn remove_vertex(&self, v: usize) -> Graph {
        let mut s = self.vertices();
        s.remove(v);
        self.induced_subgraph(&s).0
    }

    /// Relabels vertices so that old vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut h = Graph::new(self.n);
        for (u, v) in self.edges() {
            h.set_edge(perm[u], perm[v]);
        }
        if let Some(l) = &self.labels {
            let mut nl = vec![String::new(); self.n];
            for (v, text) in l.iter().enumerate() {
                nl[perm[v]] = text.clone();
            }
            h.labels = Some(nl);
        }
        h
    }

    pub fn complement_graph(&self) -> Graph {
        let mut h = Graph::new(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    h.set_edge(u, v);
                }
            }
        }
        h
    }

    pub fn is_clique(&self, s: &VertexSet) -> bool {
        let vs = s.to_vec();
        vs.iter()
            .enumerate()
            .all(|(i, &u)| vs[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    pub fn is_independent(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| !s.intersects(&self.neighbors(v)))
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.connected_words(self.vertices().words(), &mut Scratch::new(self))
    }

    /// Connected components, each sorted, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for v in self.neighbor_iter(u) {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Whether the set packed in `s` induces a connected subgraph.
    /// `s` must be nonempty and have `row_words()` words.
    pub fn connected_words(&self, s: &[u64], sc: &mut Scratch) -> bool {
        let w = self.w;
        let Some(start) = first_bit(s) else {
            return false;
        };
        let Scratch {
            visited,
            frontier,
            next,
            ..
        } = sc;
        visited.iter_mut().for_each(|x| *x = 0);
        frontier.iter_mut().for_each(|x| *x = 0);
        visited[start / 64] = 1 << (start % 64);
        frontier[start / 64] = 1 << (start % 64);
        loop {
            next.iter_mut().for_each(|x| *x = 0);
            for (i, &fw) in frontier.iter().enumerate() {
                let mut bits = fw;
                while bits != 0 {
                    let v = i * 64 + bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    let r = &self.adj[v * w..(v + 1) * w];
                    for k in 0..w {
                        next[k] |= r[k];
                    }
                }
            }
            let mut grew = false;
            let mut done = true;
            for k in 0..w {
                next[k] &= s[k] & !visited[k];
                visited[k] |= next[k];
                grew |= next[k] != 0;
                done &= visited[k] == s[k];
            }
            if done {
                return true;
            }
            if !grew {
                return false;
            }
            std::mem::swap(frontier, next);
        }
    }

    /// Legality of the state packed in `s` (see [`is_legal_state`]).
    pub fn legal_words(&self, s: &[u64], sc: &mut Scratch) -> bool {
        let w = self.w;
        let mut comp = std::mem::take(&mut sc.comp);
        let mut any_in = false;
        let mut any_out = false;
        for k in 0..w {
            let full = self.full_word(k);
            comp[k] = !s[k] & full;
            any_in |= s[k] != 0;
            any_out |= comp[k] != 0;
        }
        let ok = any_in && any_out && self.connected_words(s, sc) && self.connected_words(&comp, sc);
        sc.comp = comp;
        ok
    }

    #[inline]
    fn full_word(&self, k: usize) -> u64 {
        let r = self.n - 64 * k;
        if r >= 64 {
            !0
        } else {
            (1u64 << r) - 1
        }
    }

    /// Connectivity of a subset given as one mask, for graphs with n ≤ 64.
    #[inline]
    pub fn connected_mask(&self, s: u64) -> bool {
        debug_assert!(self.n <= 64);
        if s == 0 {
            return false;
        }
        let mut visited = s & s.wrapping_neg();
        let mut frontier = visited;
        while frontier != 0 {
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.adj[v];
            }
            next &= s & !visited;
            visited |= next;
            frontier = next;
        }
        visited == s
    }

    /// Legality of a state given as one mask, for graphs with n ≤ 64.
    #[inline]
    pub fn legal_mask(&self, s: u64) -> bool {
        let full = self.full_word(0);
        let c = !s & full;
        s != 0 && c != 0 && self.connected_mask(s) && self.connected_mask(c)
    }

    /// Whether the graph is 2-connected (connected, n ≥ 3, no cut vertex).
    pub fn is_two_connected(&self) -> bool {
        if self.n < 3 || !self.is_connected() {
            return false;
        }
        articulation_points(self, &self.vertices()).is_empty()
    }

    /// Whether the graph is 3-connected, by deleting every vertex pair (small graphs only).
    pub fn is_three_connected(&self) -> bool {
        if self.n < 4 || !self.is_two_connected() {
            return false;
        }
        let mut sc = Scratch::new(self);
        for u in 0..self.n {
            for v in u + 1..self.n {
                let mut s = self.vertices();
                s.remove(u);
                s.remove(v);
                if !self.connected_words(s.words(), &mut sc) {
                    return false;
                }
            }
        }
        true
    }
}

/// Reusable buffers for the word-level breadth-first searches.
#[derive(Clone, Debug)]
pub struct Scratch {
    visited: Vec<u64>,
    frontier: Vec<u64>,
    next: Vec<u64>,
    comp: Vec<u64>,
}

impl Scratch {
    pub fn new(g: &Graph) -> Self {
        let w = g.row_words();
        Scratch {
            visited: vec![0; w],
            frontier: vec![0; w],
            next: vec![0; w],
            comp: vec![0; w],
        }
    }
}

fn check_width(g: &Graph, s: &VertexSet) -> Result<()> {
    if s.width() != g.n() {
        return Err(Error::WidthMismatch {
            expected: g.n(),
            got: s.width(),
        });
    }
    Ok(())
}

/// Whether `s` induces a connected subgraph of `g`.
///
/// ```
/// use legalsys::{graph::{induced_connected, Graph}, VertexSet};
/// let c8 = Graph::cycle(8);
/// assert!(induced_connected(&c8, &VertexSet::from_iter(8, [0, 1, 2])).unwrap());
/// assert!(!induced_connected(&c8, &VertexSet::from_iter(8, [0, 2])).unwrap());
/// ```
pub fn induced_connected(g: &Graph, s: &VertexSet) -> Result<bool> {
    check_width(g, s)?;
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok(g.connected_words(s.words(), &mut Scratch::new(g)))
}

/// A state is legal when it and its complement are nonempty and connected.
pub fn is_legal_state(g: &Graph, s: &VertexSet) -> bool {
    if s.width() != g.n() {
        return false;
    }
    g.legal_words(s.words(), &mut Scratch::new(g))
}

/// Legal, and every vertex has a neighbour on the other side.
pub fn is_strongly_legal_state(g: &Graph, s: &VertexSet) -> bool {
    if !is_legal_state(g, s) {
        return false;
    }
    let c = s.complement();
    (0..g.n()).all(|v| {
        let other = if s.contains(v) { &c } else { s };
        g.row(v).iter().zip(other.words()).any(|(a, b)| a & b != 0)
    })
}

/// Length of a shortest cycle, `None` for forests.
pub fn girth(g: &Graph) -> Option<usize> {
    let n = g.n();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = Vec::with_capacity(n);
    for s in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        queue.clear();
        dist[s] = 0;
        parent[s] = usize::MAX;
        queue.push(s);
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            if 2 * dist[u] + 1 >= best {
                break;
            }
            for v in g.neighbor_iter(u) {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    queue.push(v);
                } else if parent[u] != v {
                    best = best.min(dist[u] + dist[v] + 1);
                }
            }
        }
    }
    (best != usize::MAX).then_some(best)
}

/// Proper 2-colouring by breadth-first search, `None` if an odd cycle exists.
/// Each component's least vertex goes to the first side.
pub fn bipartition(g: &Graph) -> Option<(VertexSet, VertexSet)> {
    let n = g.n();
    let mut side = vec![u8::MAX; n];
    for s in 0..n {
        if side[s] != u8::MAX {
            continue;
        }
        side[s] = 0;
        let mut queue = vec![s];
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            for v in g.neighbor_iter(u) {
                if side[v] == u8::MAX {
                    side[v] = 1 - side[u];
                    queue.push(v);
                } else if side[v] == side[u] {
                    return None;
                }
            }
        }
    }
    let a = VertexSet::from_iter(n, (0..n).filter(|&v| side[v] == 0));
    let b = a.complement();
    Some((a, b))
}

/// Cut vertices of the subgraph induced by `within`, ascending.
pub fn articulation_points(g: &Graph, within: &VertexSet) -> Vec<usize> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut is_cut = vec![false; n];
    let mut timer = 0;
    for root in within.iter() {
        if disc[root] != usize::MAX {
            continue;
        }
        // Iterative DFS: (vertex, parent, pending neighbours).
        let mut stack: Vec<(usize, usize, Vec<usize>)> = Vec::new();
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        let nb = |v: usize| -> Vec<usize> {
            g.neighbor_iter(v).filter(|&u| within.contains(u)).collect()
        };
        stack.push((root, usize::MAX, nb(root)));
        let mut root_children = 0;
        while let Some((v, p, pending)) = stack.last_mut() {
            let (v, p) = (*v, *p);
            if let Some(u) = pending.pop() {
                if disc[u] == usize::MAX {
                    disc[u] = timer;
                    low[u] = timer;
                    timer += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((u, v, nb(u)));
                } else if u != p {
                    low[v] = low[v].min(disc[u]);
                }
            } else {
                stack.pop();
                if p != usize::MAX {
                    low[p] = low[p].min(low[v]);
                    if p != root && low[v] >= disc[p] {
                        is_cut[p] = true;
                    }
                }
            }
        }
        if root_children >= 2 {
            is_cut[root] = true;
        }
    }
    (0..n).filter(|&v| is_cut[v]).collect()
}
