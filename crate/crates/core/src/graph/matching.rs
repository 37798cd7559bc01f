use std::collections::VecDeque;

use super::Graph;

/// Pairs of nonadjacent vertices covering every vertex once, each pair `(a, b)` with `a < b`,
/// sorted by `a`.
pub type Antimatching = Vec<(usize, usize)>;

/// Why [`perfect_antimatching`] found nothing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NoAntimatching {
    OddOrder,
    /// The complement has no perfect matching.
    NoPerfectMatching,
}

impl std::fmt::Display for NoAntimatching {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            NoAntimatching::OddOrder => "odd order",
            NoAntimatching::NoPerfectMatching => "complement has no perfect matching",
        })
    }
}

/// Partition of V into nonadjacent pairs: a perfect matching of the complement.
///
/// ```
/// use legalsys::graph::{perfect_antimatching, Graph};
/// let c4 = Graph::cycle(4);
/// assert_eq!(perfect_antimatching(&c4), Ok(vec![(0, 2), (1, 3)]));
/// assert!(perfect_antimatching(&Graph::complete(4)).is_err());
/// ```
pub fn perfect_antimatching(g: &Graph) -> Result<Antimatching, NoAntimatching> {
    if g.n() % 2 == 1 {
        return Err(NoAntimatching::OddOrder);
    }
    let mate = complement_matching(g);
    let mut pairs = Vec::with_capacity(g.n() / 2);
    for (v, m) in mate.iter().enumerate() {
        match m {
            Some(u) if *u > v => pairs.push((v, *u)),
            Some(_) => {}
            None => return Err(NoAntimatching::NoPerfectMatching),
        }
    }
    Ok(pairs)
}

/// Maximum matching of the complement of `g`, as a mate array.
pub fn complement_matching(g: &Graph) -> Vec<Option<usize>> {
    Blossom::new(g).solve()
}

const NONE: usize = usize::MAX;

struct Blossom<'a> {
    g: &'a Graph,
    n: usize,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl<'a> Blossom<'a> {
    fn new(g: &'a Graph) -> Self {
        let n = g.n();
        Blossom {
            g,
            n,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    /// Neighbours of `v` in the complement, ascending.
    fn co_neighbors(&self, v: usize) -> Vec<usize> {
        let row = self.g.row(v);
        let mut out = Vec::new();
        for (k, &word) in row.iter().enumerate() {
            let mut bits = !word;
            while bits != 0 {
                let u = k * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                if u >= self.n {
                    break;
                }
                if u != v {
                    out.push(u);
                }
            }
        }
        out
    }

    fn solve(mut self) -> Vec<Option<usize>> {
        // greedy start
        for v in 0..self.n {
            if self.mate[v] == NONE {
                if let Some(u) = self
                    .co_neighbors(v)
                    .into_iter()
                    .find(|&u| self.mate[u] == NONE)
                {
                    self.mate[v] = u;
                    self.mate[u] = v;
                }
            }
        }
        for root in 0..self.n {
            if self.mate[root] != NONE {
                continue;
            }
            let mut v = self.find_path(root);
            while v != NONE {
                let pv = self.parent[v];
                let ppv = self.mate[pv];
                self.mate[v] = pv;
                self.mate[pv] = v;
                v = ppv;
            }
        }
        self.mate
            .into_iter()
            .map(|m| (m != NONE).then_some(m))
            .collect()
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.n];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    fn find_path(&mut self, root: usize) -> usize {
        self.used.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for to in self.co_neighbors(v) {
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..self.n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return to;
                    }
                    let m = self.mate[to];
                    self.used[m] = true;
                    self.queue.push_back(m);
                }
            }
        }
        NONE
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn max_matching_oracle(h: &Graph) -> usize {
        fn rec(h: &Graph, used: &mut Vec<bool>, from: usize) -> usize {
            let n = h.n();
            let Some(v) = (from..n).find(|&v| !used[v]) else {
                return 0;
            };
            used[v] = true;
            let mut best = rec(h, used, v + 1);
            for u in v + 1..n {
                if !used[u] && h.has_edge(v, u) {
                    used[u] = true;
                    best = best.max(1 + rec(h, used, v + 1));
                    used[u] = false;
                }
            }
            used[v] = false;
            best
        }
        rec(h, &mut vec![false; h.n()], 0)
    }

    #[test]
    fn empty_graph_pairs_everything() {
        let am = perfect_antimatching(&Graph::new(6)).unwrap();
        assert_eq!(am.len(), 3);
    }

    #[test]
    fn odd_order_is_reported() {
        assert_eq!(
            perfect_antimatching(&Graph::new(5)),
            Err(NoAntimatching::OddOrder)
        );
    }

    #[test]
    fn matching_size_matches_oracle() {
        // complements of assorted small graphs, including odd cycles that force blossoms
        let mut graphs = vec![Graph::cycle(5), Graph::cycle(7), Graph::path(6)];
        for n in 5..10 {
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if (u * 7 + v * 3) % 5 < 2 {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            graphs.push(g);
        }
        for g in graphs {
            let co = g.complement_graph();
            let got = complement_matching(&g).iter().filter(|m| m.is_some()).count() / 2;
            assert_eq!(got, max_matching_oracle(&co), "{g:?}");
        }
    }
}
